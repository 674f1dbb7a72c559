// Structured verification reports: one record per check, each tied to a named
// claim from the shipped registry (or tagged as plumbing), serialized as
// deterministic JSON.
#pragma once

#include <string>
#include <vector>

namespace sv {

inline constexpr const char* kToolVersion = "stabverify 1.0.0";

struct CheckRecord {
    std::string name;     // stable check identifier
    std::string anchor;   // claim id from the registry, or "plumbing"
    std::string status;   // "pass" | "fail" | "infeasible"
    std::string witness;  // supporting data (counts, groups, divisors)
    double wall_ms = 0;
};

struct VerificationReport {
    std::string command;
    std::string ring_json;  // canonical ring block, may be empty
    std::vector<CheckRecord> checks;
    std::string csv;        // attached table, may be empty

    bool all_ok() const;    // every record passes or is infeasible-by-guard
    std::string json() const;
    void write_file(const std::string& path) const;
};

// The claim ids that check records may reference; shipped with the docs.
const std::vector<std::string>& anchor_registry();
bool anchor_known(const std::string& anchor);

}  // namespace sv
