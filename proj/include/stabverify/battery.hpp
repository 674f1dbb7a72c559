// The desk-scale verification battery: every acceptance-grade check, shared
// between the CLI `suite` subcommand and the acceptance test binary.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stabverify/report.hpp"

namespace sv {

constexpr int kCriterionCount = 12;

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckRecord> records;
    bool pass = false;
    double wall_ms = 0;
};

// Runs one acceptance criterion (1..12) end to end.
CriterionResult run_criterion(int id);

// profile: "smoke" (tiny, F_2 only), "desk" (the full battery), "extended"
// (desk plus extra rings in the cheap criteria).
VerificationReport run_profile(const std::string& profile, std::ostream* progress = nullptr);

}  // namespace sv
