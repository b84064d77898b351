#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsfactor/json_io.hpp"

namespace rsfactor {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_error = 0.0;
    double tolerance = 0.0;
    long long cases = 0;
    long long resamples = 0;
    std::string note;
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    long long moment_samples = 100000;
    // When set, group-specific suites run only on this group; the exact
    // combinatorial suites always run in full.
    std::optional<int> rank;
    std::optional<std::pair<int, int>> signature;
};

struct VerificationReport {
    VerifyOptions options;
    std::vector<SuiteResult> suites;

    bool all_pass() const;
    const SuiteResult* find(const std::string& name) const;
};

// The individual suites; round-trip and a-product run as one fused scan
// inside run_verification.
SuiteResult suite_delta_identity();
SuiteResult suite_stratum_law(const VerifyOptions& opt);
SuiteResult suite_bounded_domain(const VerifyOptions& opt);
SuiteResult suite_nilpotent_jacobian(const VerifyOptions& opt);
SuiteResult suite_invariance(const VerifyOptions& opt);
SuiteResult suite_invariance_closed_form(const VerifyOptions& opt);
SuiteResult suite_moments(const VerifyOptions& opt);
SuiteResult suite_two_letter_golden();

// Runs all suites in order.
VerificationReport run_verification(const VerifyOptions& opt);

Json report_to_json(const VerificationReport& report);

}  // namespace rsfactor
