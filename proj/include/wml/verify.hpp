#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wml {

enum class CheckKind {
    exact,      // |z| <= z_limit
    bound,      // empirical - z_limit * std_error <= predicted
    tolerance,  // empirical <= predicted, no sampling error attached
};

std::string to_string(CheckKind k);

struct VerifyItem {
    std::string name;
    CheckKind kind = CheckKind::exact;
    double predicted = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::string suite;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double z_limit = 5.0;
    std::vector<VerifyItem> items;

    bool passed() const;
};

struct VerifyOptions {
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    double z_limit = 5.0;
    unsigned threads = 0;
};

// Monte Carlo of each shape's defining product at one d.
VerifyReport verify_tables(const VerifyOptions& opt, const std::vector<int>& shapes, double d);
// Trace and determinant moments of X^T X for each (k, d).
VerifyReport verify_trace_moments(const VerifyOptions& opt, const std::vector<std::pair<std::size_t, std::size_t>>& kd);
// Gram-Schmidt coefficient laws for d x k Gaussian inputs.
VerifyReport verify_bartlett(const VerifyOptions& opt, std::size_t d, std::size_t k);
// Longest-row statistic on a star against its reference laws (two-sample KS at level 0.01).
VerifyReport verify_kappa_laws(const VerifyOptions& opt, std::size_t leaves, std::size_t d);

// Named suites with default parameters: tables, appendixA, bartlett, kappa_laws.
VerifyReport run_verify_suite(const std::string& name, const VerifyOptions& opt);
const std::vector<std::string>& verify_suite_names();

} // namespace wml
