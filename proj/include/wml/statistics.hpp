#pragma once

#include "wml/census.hpp"
#include "wml/ensembles.hpp"
#include "wml/graph.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wml {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct Kappa4Breakdown {
    double c4_part = 0.0;
    double p2_part = 0.0;
    double e_part = 0.0;
    double total = 0.0;
};

// Edge-id tuples for every term of the statistics on one mask, so repeated
// evaluation skips re-enumeration.
//   triangles  i < j < k
//   cycles     (i, j, k, l) with i < min(j, k, l) and j < l, ids of ij, jk, kl, li
//   wedges     (i, j, k) with i < k, centered at j
//   row        edges at the max-degree vertex (smallest label on ties)
class StatisticPlan {
public:
    explicit StatisticPlan(const Graph& g);

    double kappa3(std::span<const double> values) const;
    Kappa4Breakdown kappa4(std::span<const double> values) const;
    // Throws InapplicableError if the mask is edgeless.
    double kappa_r(std::span<const double> values) const;

    std::size_t num_edges() const noexcept { return num_edges_; }
    std::size_t max_degree() const noexcept { return row_.size(); }
    Vertex max_degree_vertex() const noexcept { return row_vertex_; }
    const std::vector<std::array<std::uint32_t, 3>>& triangles() const noexcept { return triangles_; }
    const std::vector<std::array<std::uint32_t, 4>>& cycles() const noexcept { return cycles_; }
    const std::vector<std::array<std::uint32_t, 2>>& wedges() const noexcept { return wedges_; }

private:
    void check(std::span<const double> values) const;

    std::size_t num_edges_ = 0;
    std::vector<std::array<std::uint32_t, 3>> triangles_;
    std::vector<std::array<std::uint32_t, 4>> cycles_;
    std::vector<std::array<std::uint32_t, 2>> wedges_;
    std::vector<std::uint32_t> row_;
    Vertex row_vertex_ = 0;
};

double kappa3(const MaskedMatrix& m);
Kappa4Breakdown kappa4(const MaskedMatrix& m);
double kappa_r(const MaskedMatrix& m);

enum class Ensemble { wishart, goe };
enum class Statistic { kappa3, kappa4, kappa4_c4, kappa4_p2, kappa4_e, kappa_r };
enum class MeanKind { exact, lower_bound };
enum class VarianceKind { exact, upper_bound };

std::string to_string(Ensemble e);
std::string to_string(Statistic s);
std::string to_string(MeanKind k);
std::string to_string(VarianceKind k);
Ensemble parse_ensemble(const std::string& s);
Statistic parse_statistic(const std::string& s);

struct MomentPrediction {
    Statistic statistic = Statistic::kappa3;
    Ensemble ensemble = Ensemble::goe;
    std::optional<std::size_t> d;
    double mean = 0.0;
    MeanKind mean_kind = MeanKind::exact;
    double variance = 0.0;
    VarianceKind variance_kind = VarianceKind::exact;
    // Set for GOE kappa4 and kappa4_e: E[(g^4 - 6g^2 + 3)^2] = 24 is used,
    // while 6 appears in the published variance formula.
    std::optional<double> edge_constant;
    std::optional<double> published_edge_constant;
};

// Upper bounds use unit constants on every census term. kappa_r has no
// moment formula here (use kappa_r_law) and throws UnsupportedPrediction.
MomentPrediction predicted_moments(const SubgraphCensus& c, std::optional<std::size_t> d, Statistic stat,
                                   Ensemble ensemble);
MomentPrediction predicted_moments(const Graph& g, std::optional<std::size_t> d, Statistic stat, Ensemble ensemble);

// (1/D) chi2(D) under GOE; (1/D) chi2(D) * (1/d) chi2(d), independent, under Wishart.
class KappaRLaw {
public:
    KappaRLaw(Ensemble ensemble, std::size_t max_degree, std::optional<std::size_t> d);

    Ensemble ensemble() const noexcept { return ensemble_; }
    std::size_t max_degree() const noexcept { return D_; }
    std::optional<std::size_t> d() const noexcept { return d_; }
    double mean() const noexcept { return 1.0; }
    double variance() const noexcept;
    double sample(Rng& rng) const;

private:
    Ensemble ensemble_;
    std::size_t D_;
    std::optional<std::size_t> d_;
};

KappaRLaw kappa_r_law(const Graph& g, std::optional<std::size_t> d, Ensemble ensemble);

// Expectations of products of Wishart entries attached to the small shapes
// of the variance expansions. Factor kinds on an entry M_ab:
//   linear   M_ab
//   centered M_ab^2 - 1
//   hermite  M_ab^4 - 6 M_ab^2 + 3
enum class FactorKind { linear, centered, hermite };

struct PairFactor {
    unsigned a;
    unsigned b;
    FactorKind kind;
    unsigned power;  // 1 or 2
};

struct PairShape {
    int id;
    unsigned num_vertices;
    std::vector<PairFactor> factors;
    std::array<double, 4> poly;  // coefficients of d^0, d^-1, d^-2, d^-3
};

constexpr int num_pair_shapes = 20;
const PairShape& pair_shape(int id);
double pair_term_expectation(int id, double d);
// Defining product of shape `id` evaluated on the entries d^{-1/2} <X_a, X_b>
// of a latent sample with at least num_vertices columns.
double pair_term_product(const PairShape& shape, const Eigen::MatrixXd& x);

// Moments of M = X^T X for X a d x k standard Gaussian matrix.
struct TraceMomentReport {
    std::size_t k = 0;
    std::size_t d = 0;
    double e_tr_sq_centered = 0.0;  // E (Tr(M/d - I))^2
    double e_tr_sq = 0.0;           // E (Tr(M/d))^2
    double e_tr_delta_sq = 0.0;     // E Tr((M/d - I)^2)
    std::optional<double> var_tr_delta_sq_bound;  // needs d >= k
    std::optional<double> e_inv_det_bound;        // E det(M/d)^{-1}, needs d >= 2k + 2
    std::optional<double> e_log2_det_bound;       // E log^2 det(M/d), needs d >= 2k + 2
};

TraceMomentReport wishart_trace_moments(std::size_t k, std::size_t d);

// Welford accumulator.
class RunningMoments {
public:
    void add(double x) noexcept {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }
    void merge(const RunningMoments& o) noexcept;
    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    // Unbiased sample variance.
    double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stderr_mean() const noexcept;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)), c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

} // namespace wml
