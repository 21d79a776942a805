// Acceptance suite: one criterion per line, PASS/FAIL, exit 0 iff all pass.
// Usage: charp_acceptance --fixtures <dir> [--cli <path-to-charpdiff>]

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charp/findim.hpp"
#include "charp/geometry.hpp"
#include "charp/hurwitz.hpp"
#include "charp/spectra.hpp"
#include "charp/taylor.hpp"

using namespace charp;

namespace {

std::string g_fixtures;
std::string g_cli;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

DiffAlgebra load(const std::string& name) {
    return DiffAlgebra::parse_file(read_file(g_fixtures + "/" + name));
}

HurwitzSeries random_series(std::mt19937& rng, const PrimeField& field, std::size_t m,
                            std::uint32_t precision, bool zero_free_term) {
    std::uniform_int_distribution<std::uint32_t> value(0, field.modulus() - 1);
    HurwitzSeries s(field, m, precision);
    for (const MultiIndex& idx : indices_up_to(m, precision)) {
        if (zero_free_term && idx.is_zero()) continue;
        s.set_coefficient(idx, Fp(field, value(rng)));
    }
    return s;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---- criterion 1: randomized ring axioms --------------------------------

Outcome criterion_ring_axioms() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(0xC0FFEE);
    const std::vector<std::pair<std::uint32_t, std::size_t>> shapes = {
        {2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}, {5, 2}};
    std::uniform_int_distribution<std::uint32_t> prec(1, 6);
    std::size_t failures = 0;
    const std::size_t kTriples = 1000;
    for (std::size_t i = 0; i < kTriples; ++i) {
        auto [p, m] = shapes[i % shapes.size()];
        PrimeField field(p);
        std::uint32_t n = prec(rng);
        HurwitzSeries f = random_series(rng, field, m, n, false);
        HurwitzSeries g = random_series(rng, field, m, n, false);
        HurwitzSeries h = random_series(rng, field, m, n, false);
        bool ok = f * g == g * f && (f * g) * h == f * (g * h) &&
                  f * (g + h) == f * g + f * h;
        for (std::size_t t = 1; t <= m && ok; ++t) {
            ok = (f * g).derive(t) == f.derive(t) * g + f * g.derive(t);
        }
        if (m == 2 && n >= 2 && ok) {
            ok = f.derive(1).derive(2) == f.derive(2).derive(1);
        }
        if (!ok) ++failures;
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << kTriples << " triples, " << failures << " failures, " << seconds << "s";
    return {failures == 0 && seconds < 10.0, detail.str()};
}

// ---- criterion 2: Frobenius vanishing -----------------------------------

Outcome criterion_frobenius() {
    std::size_t failures = 0;
    // Exhaustive for p = 2, m = 1: every series supported on orders 1..3.
    PrimeField f2(2);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        HurwitzSeries f(f2, 1, 3);
        for (std::uint32_t bit = 0; bit < 3; ++bit) {
            if (mask & (1u << bit)) {
                f.set_coefficient(MultiIndex{bit + 1}, Fp(f2, 1));
            }
        }
        if (!f.pth_power().is_zero()) ++failures;
    }
    // 500 random cases over p = 3 and p = 5.
    std::mt19937 rng(0xF0);
    for (std::size_t i = 0; i < 500; ++i) {
        PrimeField field(i % 2 == 0 ? 3 : 5);
        std::size_t m = i % 3 == 0 ? 2 : 1;
        HurwitzSeries f = random_series(rng, field, m, 4, true);
        if (!f.pth_power().is_zero()) ++failures;
    }
    return {failures == 0, "8 exhaustive + 500 random, " + std::to_string(failures) + " failures"};
}

// ---- criterion 3: universal property of the expansion -------------------

Outcome criterion_taylor() {
    std::size_t checked = 0, failures = 0;
    auto run = [&](const DiffAlgebra& a, const ScalarRingMap& phi) {
        Report r = check_universal(a, phi, 4);
        for (const auto& e : r.entries) {
            ++checked;
            if (e.status != "PASS") ++failures;
        }
    };
    DiffAlgebra b2 = load("b2.alg");
    run(b2, residue_map(b2));
    DiffAlgebra t4 = load("hf2_t4.alg");
    run(t4, residue_map(t4));
    DiffAlgebra t3 = load("hf3_t3.alg");
    run(t3, residue_map(t3));
    DiffAlgebra prod = load("b2xb2.alg");
    run(prod, ScalarRingMap(prod, Vec{1, 0, 0, 0}));
    DiffAlgebra dz = load("dual_zero.alg");
    run(dz, ScalarRingMap(dz, Vec{1, 0}));
    return {failures == 0,
            std::to_string(checked) + " clauses at N=4, " + std::to_string(failures) + " failures"};
}

// ---- criterion 4: the radical correspondence ----------------------------

Outcome criterion_correspondence() {
    auto start = std::chrono::steady_clock::now();
    std::size_t checked = 0, failures = 0;
    for (const char* name :
         {"b2.alg", "dual_zero.alg", "b2xb2.alg", "hf2_t4.alg", "hf3_t3.alg", "f3.alg"}) {
        DiffAlgebra a = load(name);
        for (const SubspaceIdeal& t : a.ring_ideals()) {
            if (!(a.radical(t) == t)) continue;
            ++checked;
            if (!(a.radical(a.differential_core(t)) == t)) ++failures;
        }
        for (const SubspaceIdeal& u : a.differential_ideals()) {
            if (!(a.quasiradical(u) == u)) continue;
            ++checked;
            if (!(a.differential_core(a.radical(u)) == u)) ++failures;
        }
        Report r = check_spectrum_correspondence(a);
        for (const auto& e : r.entries) {
            ++checked;
            if (e.status != "PASS") ++failures;
        }
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << checked << " checks, " << failures << " failures, " << seconds << "s";
    return {failures == 0 && seconds < 60.0, detail.str()};
}

// ---- criterion 5: quasispectrum topology axioms --------------------------

Outcome criterion_topology() {
    std::size_t checked = 0, failures = 0;
    for (const char* name :
         {"b2.alg", "dual_zero.alg", "b2xb2.alg", "hf2_t4.alg", "hf3_t3.alg", "f3.alg"}) {
        DiffAlgebra a = load(name);
        IdealLattice qspec = build_quasiprime_spectrum(a);
        Report r = verify_topology_axioms(a, qspec);
        for (const auto& e : r.entries) {
            ++checked;
            if (e.status != "PASS") ++failures;
        }
    }
    return {failures == 0,
            std::to_string(checked) + " axiom checks, " + std::to_string(failures) + " failures"};
}

// ---- criterion 6: quasifield characterization ----------------------------

Outcome criterion_quasifield() {
    std::size_t failures = 0;
    std::ostringstream detail;
    for (const char* name : {"b2.alg", "hf2_t4.alg", "hf3_t3.alg", "f3.alg"}) {
        DiffAlgebra a = load(name);
        DiffAlgebra::SimplicityInfo info = a.simplicity_info();
        if (!info.simple || !info.verification.passed()) {
            ++failures;
            detail << name << " ";
            continue;
        }
        // The maximal ideal is exactly the p-th power kernel.
        const std::uint32_t p = a.field().modulus();
        for (const Vec& x : enumerate_vectors(a.field(), a.dim(), 1 << 12)) {
            bool in_ideal = info.maximal_ideal->contains(x);
            bool power_zero = vec_is_zero(a.pow(x, p));
            if (in_ideal != power_zero) ++failures;
        }
    }
    if (load("dual_zero.alg").is_simple()) {
        ++failures;
        detail << "dual_zero reported simple ";
    }
    return {failures == 0, detail.str().empty() ? "4 simple fixtures + 1 non-simple"
                                                : detail.str()};
}

// ---- criterion 7: good opens and density ---------------------------------

Outcome criterion_good_opens() {
    std::size_t checked = 0, failures = 0;
    for (const char* name :
         {"b2.alg", "dual_zero.alg", "b2xb2.alg", "hf2_t4.alg", "hf3_t3.alg", "f3.alg"}) {
        DiffAlgebra a = load(name);
        IdealLattice qspec = build_quasiprime_spectrum(a);
        for (const Vec& f : enumerate_vectors(a.field(), a.dim(), 256)) {
            ++checked;
            if (!good_open_decomposition(a, qspec, f).passed()) ++failures;
            if (!good_open_density(a, qspec, f).report.passed()) ++failures;
        }
    }
    return {failures == 0,
            std::to_string(checked) + " elements, " + std::to_string(failures) + " failures"};
}

// ---- criterion 8: zero search ---------------------------------------------

Outcome criterion_zero_search() {
    PrimeField f2(2);
    std::size_t failures = 0;
    std::ostringstream detail;

    auto growth = solve_system(f2, 1, 1, {DiffPolynomial::parse("D[1](y1) - y1", f2, 1, 1)}, 3);
    if (growth.points.size() != 2 || growth.points[0].key() != Vec{0, 0, 0, 0} ||
        growth.points[1].key() != Vec{1, 1, 1, 1}) {
        ++failures;
        detail << "growth equation has " << growth.points.size() << " points; ";
    }
    auto affine = solve_system(f2, 1, 1, {DiffPolynomial::parse("D[1](y1) - 1", f2, 1, 1)}, 3);
    if (affine.points.size() != 2) {
        ++failures;
        detail << "affine equation has " << affine.points.size() << " points; ";
    }
    auto unit = solve_system(f2, 1, 1, {DiffPolynomial::parse("1", f2, 1, 1)}, 3);
    if (!unit.points.empty()) {
        ++failures;
        detail << "the unit acquired zeros; ";
    }

    // Fast path versus enumeration on every linear fixture system.
    for (const char* name : {"nss_01.sys", "nss_02.sys", "nss_03.sys", "nss_04.sys",
                             "nss_06.sys", "nss_07.sys", "nss_08.sys", "nss_10.sys"}) {
        DiffSystem sys = parse_system_file(read_file(g_fixtures + "/" + std::string(name)));
        auto fast = solve_system(sys.field, sys.n, sys.m, sys.polynomials, sys.precision,
                                 kDefaultSearchBound, SolveStrategy::linear);
        auto slow = solve_system(sys.field, sys.n, sys.m, sys.polynomials, sys.precision,
                                 kDefaultSearchBound, SolveStrategy::exhaustive);
        bool same = fast.points.size() == slow.points.size();
        for (std::size_t i = 0; same && i < fast.points.size(); ++i) {
            same = fast.points[i].key() == slow.points[i].key();
        }
        if (!same) {
            ++failures;
            detail << name << " differs between strategies; ";
        }
    }
    return {failures == 0, detail.str().empty() ? "3 stated sets + 8 strategy cross-checks"
                                                : detail.str()};
}

// ---- criterion 9: the one-sided inclusion --------------------------------

Outcome criterion_inclusion() {
    std::size_t failures = 0;
    std::ostringstream detail;
    for (int i = 1; i <= 10; ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "nss_%02d.sys", i);
        DiffSystem sys = parse_system_file(read_file(g_fixtures + "/" + name));
        Report r = check_vanishing_inclusion(sys.field, sys.n, sys.m, sys.polynomials, 3, 1, 2);
        bool equality_unverified = false;
        for (const auto& e : r.entries) {
            if (e.name == "inclusion.equality" && e.status == "UNVERIFIED") {
                equality_unverified = true;
            }
        }
        if (!r.passed() || !equality_unverified) {
            ++failures;
            detail << name << " ";
        }
    }
    return {failures == 0, detail.str().empty()
                               ? "10 systems certified at (N,r,e)=(3,1,2), equality UNVERIFIED"
                               : detail.str()};
}

// ---- criterion 10: dimension profiles -------------------------------------

Outcome criterion_dimension() {
    std::size_t failures = 0;
    auto zero_ideal = dimension_profile({}, 1, 1, 8);
    for (std::uint32_t t = 0; t <= 8; ++t) {
        if (zero_ideal[t] != t + 1) ++failures;
    }
    auto killed = dimension_profile(
        derivative_closure_vars({DerivVar{1, MultiIndex{0}}}, 1, 1, 8), 1, 1, 8);
    for (std::uint32_t t = 0; t <= 8; ++t) {
        if (killed[t] != 0) ++failures;
    }
    std::vector<DerivVar> plain{DerivVar{1, MultiIndex{0}}};
    std::vector<DerivVar> shifted{DerivVar{1, MultiIndex{0}}, DerivVar{1, MultiIndex{1}}};
    auto a = dimension_profile_for_generators(plain, 1, 9);
    auto b = dimension_profile_for_generators(shifted, 1, 9);
    const std::uint32_t c = 1;
    for (std::uint32_t t = 0; t + c <= 9 && t <= 8; ++t) {
        if (a[t] > b[t + c] || b[t] > a[t + c]) ++failures;
    }
    return {failures == 0, "growth, collapse, and shift-equivalence profiles, " +
                               std::to_string(failures) + " failures"};
}

// ---- criterion 11: CLI determinism ----------------------------------------

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::string command = "'" + g_cli + "'";
    for (const std::string& a : args) command += " '" + a + "'";
    command += " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw Error("cannot spawn " + command);
    RunResult result;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, got);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

Outcome criterion_cli() {
    if (g_cli.empty()) return {false, "no --cli path given"};
    auto fixture = [&](const char* name) { return g_fixtures + "/" + name; };

    struct Invocation {
        std::vector<std::string> args;
        int expected_exit;
        std::string expect_substring;
    };
    std::vector<Invocation> suite = {
        {{"algebra", fixture("b2.alg")}, 0, "SIMPLE true"},
        {{"algebra", fixture("dual_zero.alg")}, 0, "SIMPLE false"},
        {{"algebra", fixture("b2xb2.alg")}, 0, "QSPEC 2 points"},
        {{"algebra", fixture("hf2_t4.alg")}, 0, "SIMPLE true"},
        {{"algebra", fixture("hf3_t3.alg")}, 0, "SIMPLE true"},
        {{"algebra", fixture("f3.alg")}, 0, "QSPEC 1 point"},
        {{"--format", "json", "algebra", fixture("b2.alg")}, 0, "\"type\": \"simple\""},
        {{"algebra", fixture("bad_leibniz.alg"), "--checks", "validate"}, 1, "FAIL"},
        {{"algebra", fixture("malformed.alg")}, 2, ""},
        {{"solve", fixture("sys_linear1.sys")}, 0, "SOLUTIONS 2"},
        {{"solve", fixture("sys_linear2.sys")}, 0, "SOLUTIONS 2"},
        {{"solve", fixture("sys_unit.sys")}, 0, "SOLUTIONS 0"},
        {{"solve", fixture("sys_linear1.sys"), "--precision", "40"}, 3, ""},
        {{"taylor", fixture("b2.alg"), "--precision", "4"}, 0, "UNIVERSAL PASS"},
        {{"taylor", fixture("b2.alg"), "--precision", "4"}, 0, "eps -> [1]=1"},
        {{"taylor", fixture("dual_zero.alg")}, 1, ""},
        {{"hw", "p=2", "m=1", "N=3", "mul", "(1+[1])", "[1]"}, 0, "[1]=1"},
        {{"hw", "p=2", "m=1", "N=3", "d", "1"}, 0, "0"},
        {{"hw", "p=3", "m=1", "N=4", "pow", "[1]", "3"}, 0, "0"},
    };

    std::size_t failures = 0;
    std::ostringstream detail;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        RunResult first = run_cli(suite[i].args);
        RunResult second = run_cli(suite[i].args);
        if (first.output != second.output || first.exit_code != second.exit_code) {
            ++failures;
            detail << "run " << i << " not reproducible; ";
            continue;
        }
        if (first.exit_code != suite[i].expected_exit) {
            ++failures;
            detail << "run " << i << " exited " << first.exit_code << " (expected "
                   << suite[i].expected_exit << "); ";
            continue;
        }
        if (!suite[i].expect_substring.empty() &&
            first.output.find(suite[i].expect_substring) == std::string::npos) {
            ++failures;
            detail << "run " << i << " missing '" << suite[i].expect_substring << "'; ";
        }
    }
    return {failures == 0, detail.str().empty()
                               ? std::to_string(suite.size()) + " invocations, byte-identical"
                               : detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--fixtures") g_fixtures = argv[i + 1];
        if (flag == "--cli") g_cli = argv[i + 1];
    }
    if (g_fixtures.empty()) {
        std::cerr << "usage: charp_acceptance --fixtures <dir> [--cli <path>]\n";
        return 2;
    }

    struct Criterion {
        const char* label;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria = {
        {"series ring axioms", criterion_ring_axioms},
        {"Frobenius vanishing", criterion_frobenius},
        {"Taylor universality", criterion_taylor},
        {"radical correspondence", criterion_correspondence},
        {"quasispectrum topology", criterion_topology},
        {"quasifield characterization", criterion_quasifield},
        {"good opens and density", criterion_good_opens},
        {"zero search", criterion_zero_search},
        {"one-sided inclusion", criterion_inclusion},
        {"dimension profile", criterion_dimension},
        {"cli determinism", criterion_cli},
    };

    std::size_t passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (outcome.pass) ++passed;
        std::cout << "CRITERION " << (i + 1) << " " << (outcome.pass ? "PASS" : "FAIL") << " "
                  << criteria[i].label;
        if (!outcome.detail.empty()) std::cout << " (" << outcome.detail << ")";
        std::cout << "\n";
    }
    std::cout << "SUMMARY " << passed << "/" << criteria.size() << " PASS\n";
    return passed == criteria.size() ? 0 : 1;
}
