#pragma once

#include "wml/census.hpp"
#include "wml/ensembles.hpp"
#include "wml/statistics.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wml {

enum class TestKind { deg3, deg4, maxdeg };
enum class Verdict { wishart, goe, inapplicable };

std::string to_string(TestKind t);
std::string to_string(Verdict v);
TestKind parse_test(const std::string& s);

struct TestVerdict {
    Verdict predicted = Verdict::inapplicable;
    double statistic_value = 0.0;
    double threshold = 0.0;
};

// Test bound to one mask and d; the statistic plan and threshold are built once.
//   deg3    wishart iff kappa3 >= d^{-1/2} num(C3) / 2
//   deg4    wishart iff kappa4 >= d^{-1} (num(C4) + num(P2) + num(E)) / 2
//   maxdeg  goe iff |kappa_r - 1| <= (d D)^{-1/4}
class PreparedTest {
public:
    PreparedTest(const Graph& g, std::size_t d, TestKind kind);

    TestKind kind() const noexcept { return kind_; }
    bool applicable() const noexcept { return applicable_; }
    double threshold() const noexcept { return threshold_; }
    TestVerdict apply(std::span<const double> values) const;

private:
    TestKind kind_;
    bool applicable_ = false;
    double threshold_ = 0.0;
    StatisticPlan plan_;
};

TestVerdict deg3_test(const MaskedMatrix& m, std::size_t d);
TestVerdict deg4_test(const MaskedMatrix& m, std::size_t d);
TestVerdict maxdeg_test(const MaskedMatrix& m, std::size_t d);

struct ErrorEstimate {
    double type1 = 0.0;  // GOE classified as Wishart
    double type2 = 0.0;  // Wishart classified as GOE
    double tv_lower = 0.0;
    double stderr1 = 0.0;
    double stderr2 = 0.0;
    std::size_t trials = 0;
    std::size_t errors1 = 0;
    std::size_t errors2 = 0;
};

// Runs f(begin, end, worker) over [0, count) in blocks; threads == 0 means
// hardware concurrency. Block boundaries do not depend on the thread count.
void parallel_blocks(std::size_t count, std::size_t block, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& f);
unsigned resolve_threads(unsigned threads);

// Trial i of the null hypothesis draws from Rng(derive_seed(base_seed, seed_tag::goe, i)),
// trial i of the alternative from Rng(derive_seed(base_seed, seed_tag::wishart, i)).
ErrorEstimate estimate_test_error(GraphPtr g, std::size_t d, TestKind test, std::size_t trials,
                                  std::uint64_t base_seed, unsigned threads = 0,
                                  WishartMethod method = WishartMethod::automatic);

struct Ratio {
    std::string name;
    double numerator = 0.0;
    double denominator = 1.0;
    double ratio = 0.0;
    // Below 0.1. Descriptive only: the hypotheses are asymptotic.
    bool regime_suggestive = false;
};

struct HypothesisReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<Ratio> convergence;   // general-mask conditions
    std::vector<Ratio> bipartite;     // only for oriented masks
    std::vector<Ratio> regularity;    // divergence-side regularity ratios
    std::optional<Ratio> degree;      // d / maxdeg, when maxdeg >= 1
};

HypothesisReport convergence_report(const Graph& g, std::size_t d);
HypothesisReport convergence_report(const Graph& g, const SubgraphCensus& c, std::size_t d);

struct ThresholdTerms {
    std::vector<std::pair<std::string, double>> terms;
    double total = 0.0;
};

// Natural logarithms; both need n >= 2 and 0 <= p <= 1, bip needs m >= 1.
ThresholdTerms er_threshold_terms(double n, double p);
ThresholdTerms bip_threshold_terms(double n, double m, double p);
double er_threshold(double n, double p);
double bip_threshold(double n, double m, double p);

struct SweepConfig {
    std::string family;  // er | biper | kbip | complete
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> p_grid;
    std::vector<std::size_t> d_grid;
    TestKind test = TestKind::deg4;
    std::size_t trials = 0;
    std::uint64_t base_seed = 0;
    unsigned threads = 0;
};

struct SweepRow {
    std::string family;
    std::size_t n = 0;
    std::optional<std::size_t> m;
    double p = 0.0;
    std::size_t d = 0;
    TestKind test = TestKind::deg4;
    bool inapplicable = false;
    ErrorEstimate estimate;
    std::uint64_t seed = 0;  // base seed of this row's trials
    double theory_threshold = 0.0;
};

// The mask at p_grid[i] comes from derive_seed(base, seed_tag::mask, i) and
// is shared by every d; trials use derive_seed(base, seed_tag::trial, i).
std::vector<SweepRow> phase_sweep(const SweepConfig& config);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

} // namespace wml
