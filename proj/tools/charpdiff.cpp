// charpdiff: exact characteristic-p differential algebra from the command
// line. Subcommands: algebra (validate/analyze an algebra file), solve
// (zero search for a polynomial system), taylor (series expansion of a
// quasifield with the universal-diagram report), hw (series calculator).

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "charp/findim.hpp"
#include "charp/geometry.hpp"
#include "charp/hurwitz.hpp"
#include "charp/spectra.hpp"
#include "charp/taylor.hpp"

using namespace charp;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitTooLarge = 3;

/// Collects output as (line, json record) pairs so both encodings mirror each
/// other one-to-one.
class Output {
public:
    void add(std::string line, ordered_json record) {
        lines_.push_back(std::move(line));
        records_.push_back(std::move(record));
    }

    void add_report(const Report& report) {
        for (const ReportEntry& e : report.entries) {
            std::string line = "AXIOM " + e.name + " " + e.status;
            if (!e.witness.empty()) line += " " + e.witness;
            add(std::move(line), ordered_json{{"type", "axiom"},
                                              {"name", e.name},
                                              {"status", e.status},
                                              {"witness", e.witness}});
        }
    }

    void emit(bool as_json) const {
        if (as_json) {
            ordered_json all = ordered_json::array();
            for (const auto& r : records_) all.push_back(r);
            std::cout << all.dump(2) << "\n";
        } else {
            for (const std::string& line : lines_) std::cout << line << "\n";
        }
    }

private:
    std::vector<std::string> lines_;
    std::vector<ordered_json> records_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::uint64_t default_bound() {
    if (const char* env = std::getenv("CHARP_DIFFALG_BOUND")) {
        std::string text(env);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && value > 0) return value;
    }
    return kDefaultEnumerationBound;
}

std::string plural_points(std::size_t n) {
    return std::to_string(n) + (n == 1 ? " point" : " points");
}

void add_lattice_dump(Output& out, const IdealLattice& lattice) {
    for (std::size_t i = 0; i < lattice.points.size(); ++i) {
        const SubspaceIdeal& pt = lattice.points[i];
        out.add("POINT " + std::to_string(i) + " dim=" + std::to_string(pt.dim()) + " basis=[" +
                    pt.basis().to_string() + "]",
                ordered_json{{"type", "point"},
                             {"id", i},
                             {"dim", pt.dim()},
                             {"basis", pt.basis().to_string()}});
    }
    for (std::size_t i = 0; i < lattice.points.size(); ++i) {
        for (std::size_t j = 0; j < lattice.points.size(); ++j) {
            if (i != j && lattice.leq[i][j]) {
                out.add("LE " + std::to_string(i) + " " + std::to_string(j),
                        ordered_json{{"type", "le"}, {"from", i}, {"to", j}});
            }
        }
    }
}

int run_algebra(const std::string& path, const std::vector<std::string>& checks,
                std::uint64_t bound, bool as_json) {
    DiffAlgebra algebra = DiffAlgebra::parse_file(read_file(path));
    Output out;
    out.add("ALGEBRA p=" + std::to_string(algebra.field().modulus()) +
                " dim=" + std::to_string(algebra.dim()) +
                " m=" + std::to_string(algebra.num_derivations()),
            ordered_json{{"type", "algebra"},
                         {"p", algebra.field().modulus()},
                         {"dim", algebra.dim()},
                         {"m", algebra.num_derivations()}});
    bool all_pass = true;

    auto enabled = [&](const std::string& name) {
        for (const std::string& c : checks) {
            if (c == name) return true;
        }
        return false;
    };

    if (enabled("validate")) {
        Report report = algebra.validate();
        out.add_report(report);
        all_pass = all_pass && report.passed();
    }
    if (enabled("ideals")) {
        auto ideals = algebra.differential_ideals(bound);
        out.add("IDEALS " + std::to_string(ideals.size()),
                ordered_json{{"type", "ideals"}, {"count", ideals.size()}});
        for (std::size_t i = 0; i < ideals.size(); ++i) {
            out.add("IDEAL " + std::to_string(i) + " dim=" + std::to_string(ideals[i].dim()) +
                        " basis=[" + ideals[i].basis().to_string() + "]",
                    ordered_json{{"type", "ideal"},
                                 {"id", i},
                                 {"dim", ideals[i].dim()},
                                 {"basis", ideals[i].basis().to_string()}});
        }
    }
    IdealLattice qspec;
    bool have_qspec = false;
    auto ensure_qspec = [&]() {
        if (!have_qspec) {
            qspec = build_quasiprime_spectrum(algebra, bound);
            have_qspec = true;
        }
    };
    if (enabled("spectra")) {
        IdealLattice spec = build_prime_spectrum(algebra, bound);
        out.add("SPEC " + plural_points(spec.size()),
                ordered_json{{"type", "spec"}, {"kind", "prime"}, {"points", spec.size()}});
        add_lattice_dump(out, spec);
        ensure_qspec();
        out.add("QSPEC " + plural_points(qspec.size()),
                ordered_json{{"type", "spec"}, {"kind", "quasiprime"}, {"points", qspec.size()}});
        add_lattice_dump(out, qspec);
    }
    if (enabled("topology")) {
        ensure_qspec();
        Report report = verify_topology_axioms(algebra, qspec, bound);
        out.add_report(report);
        all_pass = all_pass && report.passed();
    }
    if (enabled("homeo")) {
        Report report = check_spectrum_correspondence(algebra, bound);
        out.add_report(report);
        all_pass = all_pass && report.passed();
    }
    if (enabled("simple")) {
        DiffAlgebra::SimplicityInfo info = algebra.simplicity_info(bound);
        out.add(std::string("SIMPLE ") + (info.simple ? "true" : "false"),
                ordered_json{{"type", "simple"}, {"value", info.simple}});
        if (info.simple) {
            out.add("QUASIFIELD maximal_ideal=[" + info.maximal_ideal->basis().to_string() + "]",
                    ordered_json{{"type", "quasifield"},
                                 {"maximal_ideal", info.maximal_ideal->basis().to_string()}});
            out.add_report(info.verification);
            all_pass = all_pass && info.verification.passed();
        }
    }

    out.emit(as_json);
    return all_pass ? 0 : kExitCheckFailed;
}

int run_solve(const std::string& path, std::int64_t precision_flag, std::uint64_t bound,
              bool as_json) {
    DiffSystem sys = parse_system_file(read_file(path));
    std::uint32_t precision =
        precision_flag >= 0 ? static_cast<std::uint32_t>(precision_flag) : sys.precision;
    SolutionSet solutions =
        solve_system(sys.field, sys.n, sys.m, sys.polynomials, precision, bound);
    Output out;
    out.add("SYSTEM p=" + std::to_string(sys.field.modulus()) + " m=" + std::to_string(sys.m) +
                " n=" + std::to_string(sys.n) + " N=" + std::to_string(precision) +
                " polynomials=" + std::to_string(sys.polynomials.size()),
            ordered_json{{"type", "system"},
                         {"p", sys.field.modulus()},
                         {"m", sys.m},
                         {"n", sys.n},
                         {"N", precision},
                         {"polynomials", sys.polynomials.size()}});
    out.add("SOLUTIONS " + std::to_string(solutions.points.size()),
            ordered_json{{"type", "solutions"},
                         {"count", solutions.points.size()},
                         {"strategy",
                          solutions.used == SolveStrategy::linear ? "linear" : "exhaustive"}});
    for (const HurwitzPoint& point : solutions.points) {
        out.add(point.to_string(),
                ordered_json{{"type", "solution"}, {"text", point.to_string()}});
    }
    out.emit(as_json);
    return 0;
}

int run_taylor(const std::string& path, std::uint32_t precision, std::uint64_t bound,
               bool as_json) {
    DiffAlgebra algebra = DiffAlgebra::parse_file(read_file(path));
    ScalarRingMap phi = residue_map(algebra, bound);
    TaylorExpansion taylor(algebra, phi, precision);
    Output out;
    out.add("TAYLOR p=" + std::to_string(algebra.field().modulus()) +
                " dim=" + std::to_string(algebra.dim()) + " N=" + std::to_string(precision),
            ordered_json{{"type", "taylor"},
                         {"p", algebra.field().modulus()},
                         {"dim", algebra.dim()},
                         {"N", precision}});
    for (std::size_t i = 0; i < algebra.dim(); ++i) {
        std::string series = taylor.image_of_basis(i).coeffs_to_string();
        out.add(algebra.basis_names()[i] + " -> " + series,
                ordered_json{{"type", "row"},
                             {"basis", algebra.basis_names()[i]},
                             {"series", series}});
    }
    Report report = check_universal(algebra, phi, precision);
    out.add_report(report);
    out.add(std::string("UNIVERSAL ") + (report.passed() ? "PASS" : "FAIL"),
            ordered_json{{"type", "universal"}, {"status", report.passed() ? "PASS" : "FAIL"}});
    out.emit(as_json);
    return report.passed() ? 0 : kExitCheckFailed;
}

/// Expression language of the series calculator:
///   sum     := product (('+'|'-') product)*
///   product := power ('*' power)*
///   power   := primary ('^' NAT)?
///   primary := NAT | '[' NAT (',' NAT)* ']' | '(' sum ')' | '-' primary
///            | 'mul' primary primary | 'add' primary primary
///            | 'd' primary | 'd' DIGITS primary | 'pow' primary NAT
class SeriesScript {
public:
    SeriesScript(std::string_view text, const PrimeField& field, std::size_t m,
                 std::uint32_t precision)
        : text_(text), field_(field), m_(m), precision_(precision) {}

    HurwitzSeries run() {
        HurwitzSeries s = sum();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return s;
    }

private:
    HurwitzSeries sum() {
        HurwitzSeries acc = product();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc = acc + product();
            } else if (peek() == '-') {
                ++pos_;
                acc = acc - product();
            } else {
                return acc;
            }
        }
    }

    HurwitzSeries product() {
        HurwitzSeries acc = power();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    HurwitzSeries power() {
        HurwitzSeries base = primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            return base.pow(number());
        }
        return base;
    }

    HurwitzSeries primary() {
        skip_ws();
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -primary();
        }
        if (c == '(') {
            ++pos_;
            HurwitzSeries inner = sum();
            expect(')');
            return inner;
        }
        if (c == '[') {
            ++pos_;
            std::vector<std::uint32_t> coords;
            coords.push_back(static_cast<std::uint32_t>(number()));
            while (true) {
                skip_ws();
                if (peek() != ',') break;
                ++pos_;
                coords.push_back(static_cast<std::uint32_t>(number()));
            }
            expect(']');
            if (coords.size() != m_) fail("index arity does not match m");
            MultiIndex idx{coords};
            if (idx.order() > precision_) fail("index order beyond precision");
            return HurwitzSeries::delta(field_, m_, precision_, idx);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return HurwitzSeries::constant(field_, m_, precision_,
                                           static_cast<std::int64_t>(number()));
        }
        if (match_word("mul")) {
            HurwitzSeries a = primary();
            HurwitzSeries b = primary();
            return a * b;
        }
        if (match_word("add")) {
            HurwitzSeries a = primary();
            HurwitzSeries b = primary();
            return a + b;
        }
        if (match_word("pow")) {
            HurwitzSeries a = primary();
            return a.pow(number());
        }
        if (c == 'd') {
            ++pos_;
            std::size_t t = 1;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                t = static_cast<std::size_t>(number());
            }
            return primary().derive(t);
        }
        fail("expected a series expression");
    }

    bool match_word(std::string_view word) {
        skip_ws();
        if (text_.compare(pos_, word.size(), word) != 0) return false;
        std::size_t end = pos_ + word.size();
        if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) {
            return false;
        }
        pos_ = end;
        return true;
    }

    std::uint64_t number() {
        skip_ws();
        std::uint64_t value = 0;
        auto begin = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
        if (ec != std::errc() || ptr == begin) fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return value;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(1, pos_ + 1, msg);
    }

    std::string_view text_;
    PrimeField field_;
    std::size_t m_;
    std::uint32_t precision_;
    std::size_t pos_ = 0;
};

int run_hw(const std::vector<std::string>& tokens, bool as_json) {
    if (tokens.size() < 4) {
        throw SyntaxError(1, 1, "usage: hw p=<p> m=<m> N=<N> <expression...>");
    }
    auto keyed = [](const std::string& tok, std::string_view key) -> std::uint64_t {
        if (tok.rfind(std::string(key) + "=", 0) != 0) {
            throw SyntaxError(1, 1, "expected '" + std::string(key) + "=<number>'");
        }
        return std::strtoull(tok.c_str() + key.size() + 1, nullptr, 10);
    };
    PrimeField field(static_cast<std::uint32_t>(keyed(tokens[0], "p")));
    std::size_t m = static_cast<std::size_t>(keyed(tokens[1], "m"));
    std::uint32_t precision = static_cast<std::uint32_t>(keyed(tokens[2], "N"));
    std::string script;
    for (std::size_t i = 3; i < tokens.size(); ++i) {
        if (i > 3) script += " ";
        script += tokens[i];
    }
    HurwitzSeries result = SeriesScript(script, field, m, precision).run();
    Output out;
    out.add(result.coeffs_to_string(), ordered_json{{"type", "series"},
                                                    {"text", result.coeffs_to_string()},
                                                    {"canonical", result.to_string()}});
    out.emit(as_json);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact characteristic-p differential algebra toolkit"};
    app.require_subcommand(1);

    std::string format = "lines";
    app.add_option("--format", format, "Output encoding")
        ->check(CLI::IsMember({"lines", "json"}))
        ->capture_default_str();

    std::uint64_t bound = default_bound();

    std::string algebra_path;
    std::vector<std::string> checks{"validate", "ideals", "spectra", "topology", "homeo",
                                    "simple"};
    auto* algebra_cmd = app.add_subcommand("algebra", "Analyze an algebra file");
    algebra_cmd->add_option("file", algebra_path, "Algebra file")->required();
    algebra_cmd->add_option("--checks", checks, "Checks to run")
        ->delimiter(',')
        ->check(CLI::IsMember({"validate", "ideals", "spectra", "topology", "homeo", "simple"}));
    algebra_cmd->add_option("--bound", bound, "Enumeration bound");

    std::string solve_path;
    std::int64_t solve_precision = -1;
    auto* solve_cmd = app.add_subcommand("solve", "Zero search for a polynomial system");
    solve_cmd->add_option("file", solve_path, "System file")->required();
    solve_cmd->add_option("--precision", solve_precision,
                          "Override the precision declared in the file");
    solve_cmd->add_option("--bound", bound, "Search space bound");

    std::string taylor_path;
    std::uint32_t taylor_precision = 4;
    auto* taylor_cmd = app.add_subcommand("taylor", "Series expansion of a quasifield");
    taylor_cmd->add_option("file", taylor_path, "Algebra file")->required();
    taylor_cmd->add_option("--precision", taylor_precision, "Expansion precision")
        ->capture_default_str();
    taylor_cmd->add_option("--bound", bound, "Enumeration bound");

    std::vector<std::string> hw_tokens;
    auto* hw_cmd = app.add_subcommand("hw", "Series calculator: p=<p> m=<m> N=<N> <expr>");
    hw_cmd->add_option("expr", hw_tokens, "Header assignments followed by the expression")
        ->required()
        ->take_all();

    CLI11_PARSE(app, argc, argv);

    const bool as_json = format == "json";
    try {
        if (*algebra_cmd) return run_algebra(algebra_path, checks, bound, as_json);
        if (*solve_cmd) return run_solve(solve_path, solve_precision, bound, as_json);
        if (*taylor_cmd) return run_taylor(taylor_path, taylor_precision, bound, as_json);
        if (*hw_cmd) return run_hw(hw_tokens, as_json);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const EnumerationTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTooLarge;
    } catch (const SearchSpaceTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTooLarge;
    } catch (const DimensionTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTooLarge;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return 0;
}
