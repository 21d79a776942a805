#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace charp {

/// One verified statement: PASS, FAIL (with a witness), or UNVERIFIED for
/// claims a report states explicitly but does not certify.
struct ReportEntry {
    std::string name;
    std::string status;
    std::string witness;
};

struct Report {
    std::vector<ReportEntry> entries;

    bool passed() const {
        for (const ReportEntry& e : entries) {
            if (e.status == "FAIL") return false;
        }
        return true;
    }

    void pass(std::string name, std::string witness = "") {
        entries.push_back({std::move(name), "PASS", std::move(witness)});
    }
    void fail(std::string name, std::string witness = "") {
        entries.push_back({std::move(name), "FAIL", std::move(witness)});
    }
    void check(std::string name, bool ok, std::string witness = "") {
        if (ok) {
            pass(std::move(name));
        } else {
            fail(std::move(name), std::move(witness));
        }
    }
    void note(std::string name, std::string status, std::string witness = "") {
        entries.push_back({std::move(name), std::move(status), std::move(witness)});
    }
    void merge(const Report& other) {
        entries.insert(entries.end(), other.entries.begin(), other.entries.end());
    }

    /// Line encoding: "<prefix> <name> <status>[ <witness>]".
    std::vector<std::string> to_lines(std::string_view prefix = "AXIOM") const {
        std::vector<std::string> lines;
        lines.reserve(entries.size());
        for (const ReportEntry& e : entries) {
            std::string line = std::string(prefix) + " " + e.name + " " + e.status;
            if (!e.witness.empty()) line += " " + e.witness;
            lines.push_back(std::move(line));
        }
        return lines;
    }
};

}  // namespace charp
