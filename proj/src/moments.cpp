#include "wml/statistics.hpp"

#include "wml/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wml {

std::string to_string(Ensemble e) { return e == Ensemble::wishart ? "wishart" : "goe"; }

std::string to_string(Statistic s) {
    switch (s) {
    case Statistic::kappa3: return "kappa3";
    case Statistic::kappa4: return "kappa4";
    case Statistic::kappa4_c4: return "kappa4_c4";
    case Statistic::kappa4_p2: return "kappa4_p2";
    case Statistic::kappa4_e: return "kappa4_e";
    case Statistic::kappa_r: return "kappa_r";
    }
    return "?";
}

std::string to_string(MeanKind k) { return k == MeanKind::exact ? "exact" : "lower_bound"; }
std::string to_string(VarianceKind k) { return k == VarianceKind::exact ? "exact" : "upper_bound"; }

Ensemble parse_ensemble(const std::string& s) {
    if (s == "wishart") return Ensemble::wishart;
    if (s == "goe") return Ensemble::goe;
    throw ParseError("unknown ensemble '" + s + "'", s);
}

Statistic parse_statistic(const std::string& s) {
    for (Statistic st : {Statistic::kappa3, Statistic::kappa4, Statistic::kappa4_c4, Statistic::kappa4_p2,
                         Statistic::kappa4_e, Statistic::kappa_r})
        if (to_string(st) == s) return st;
    throw ParseError("unknown statistic '" + s + "'", s);
}

MomentPrediction predicted_moments(const SubgraphCensus& c, std::optional<std::size_t> d, Statistic stat,
                                   Ensemble ensemble) {
    if (stat == Statistic::kappa_r)
        throw UnsupportedPrediction("the longest-row statistic is described by its law; use kappa_r_law");
    MomentPrediction p;
    p.statistic = stat;
    p.ensemble = ensemble;
    const auto f = [](Count x) { return to_double(x); };

    if (ensemble == Ensemble::goe) {
        constexpr double edge_constant = 24.0;
        p.mean = 0.0;
        p.mean_kind = MeanKind::exact;
        p.variance_kind = VarianceKind::exact;
        switch (stat) {
        case Statistic::kappa3: p.variance = f(c.c3); break;
        case Statistic::kappa4: p.variance = f(c.c4) + 4.0 * f(c.p2) + edge_constant * f(c.e); break;
        case Statistic::kappa4_c4: p.variance = f(c.c4); break;
        case Statistic::kappa4_p2: p.variance = 4.0 * f(c.p2); break;
        case Statistic::kappa4_e: p.variance = edge_constant * f(c.e); break;
        case Statistic::kappa_r: break;
        }
        if (stat == Statistic::kappa4 || stat == Statistic::kappa4_e) {
            p.edge_constant = edge_constant;
            p.published_edge_constant = 6.0;
        }
        return p;
    }

    if (!d || *d < 1) throw DomainError("wishart predictions need d >= 1");
    p.d = d;
    const double dd = static_cast<double>(*d);
    const double inv = 1.0 / dd, inv2 = inv * inv, inv3 = inv2 * inv;
    p.mean_kind = MeanKind::exact;
    p.variance_kind = VarianceKind::upper_bound;
    switch (stat) {
    case Statistic::kappa3:
        p.mean = f(c.c3) / std::sqrt(dd);
        p.variance = f(c.c3) + inv * f(c.c3_2e) + inv2 * f(c.c3_2v);
        break;
    case Statistic::kappa4:
        p.mean = inv * (f(c.c4) + 2.0 * f(c.p2) + 6.0 * f(c.e));
        p.variance = f(c.c4) + f(c.p2) + f(c.e) + inv * std::pow(f(c.c4) + f(c.p2), 1.5) +
                     inv2 * (f(c.k14) + f(c.k24) + f(c.c4_2e)) + inv3 * f(c.c4_2v);
        break;
    case Statistic::kappa4_c4:
        p.mean = inv * f(c.c4);
        p.variance = f(c.c4) + inv * f(c.k23) + inv2 * (f(c.k24) + f(c.c4_2e) + f(c.c4_2ev)) + inv3 * f(c.c4_2v);
        break;
    case Statistic::kappa4_p2:
        p.mean = 2.0 * inv * f(c.p2);
        p.variance = f(c.p2) + inv * (f(c.k13) + f(c.c3)) + inv2 * (f(c.k14) + f(c.c4) + f(c.c3_plus) + f(c.p3)) +
                     inv3 * (f(c.k13_plus) + f(c.p4));
        break;
    case Statistic::kappa4_e:
        p.mean = 6.0 * inv * f(c.e);
        p.variance = f(c.e) + inv2 * f(c.p2);
        break;
    case Statistic::kappa_r: break;
    }
    return p;
}

MomentPrediction predicted_moments(const Graph& g, std::optional<std::size_t> d, Statistic stat, Ensemble ensemble) {
    if (stat == Statistic::kappa_r)
        throw UnsupportedPrediction("the longest-row statistic is described by its law; use kappa_r_law");
    return predicted_moments(census(g), d, stat, ensemble);
}

KappaRLaw::KappaRLaw(Ensemble ensemble, std::size_t max_degree, std::optional<std::size_t> d)
    : ensemble_(ensemble), D_(max_degree), d_(d) {
    if (D_ < 1) throw InapplicableError("longest-row law needs max degree >= 1");
    if (ensemble_ == Ensemble::wishart && (!d_ || *d_ < 1)) throw DomainError("wishart law needs d >= 1");
    if (ensemble_ == Ensemble::goe) d_.reset();
}

double KappaRLaw::variance() const noexcept {
    const double D = static_cast<double>(D_);
    if (ensemble_ == Ensemble::goe) return 2.0 / D;
    const double d = static_cast<double>(*d_);
    return 2.0 / D + 2.0 / d + 4.0 / (D * d);
}

double KappaRLaw::sample(Rng& rng) const {
    const double D = static_cast<double>(D_);
    const double row = rng.chi_squared(D) / D;
    if (ensemble_ == Ensemble::goe) return row;
    const double d = static_cast<double>(*d_);
    return row * (rng.chi_squared(d) / d);
}

KappaRLaw kappa_r_law(const Graph& g, std::optional<std::size_t> d, Ensemble ensemble) {
    if (g.num_vertices() == 0) throw InapplicableError("longest-row law on the empty graph");
    return KappaRLaw(ensemble, max_degree_vertex(g).degree, d);
}

namespace {

using FK = FactorKind;

PairFactor L(unsigned a, unsigned b, unsigned pw = 1) { return {a, b, FK::linear, pw}; }
PairFactor C(unsigned a, unsigned b, unsigned pw = 1) { return {a, b, FK::centered, pw}; }
PairFactor H(unsigned a, unsigned b, unsigned pw = 1) { return {a, b, FK::hermite, pw}; }

std::vector<PairShape> build_shapes() {
    return {
        {1, 3, {L(0, 1, 2), L(1, 2, 2), L(2, 0, 2)}, {1, 10, 16, 0}},
        {2, 4, {L(0, 1, 2), L(1, 2), L(2, 0), L(1, 3), L(3, 0)}, {0, 3, 6, 0}},
        {3, 5, {L(0, 1), L(1, 2), L(2, 0), L(0, 3), L(3, 4), L(4, 0)}, {0, 1, 2, 0}},
        {4, 4, {L(0, 1, 2), L(1, 2, 2), L(2, 3, 2), L(3, 0, 2)}, {1, 8, 32, 40}},
        {5, 5, {L(0, 1, 2), L(1, 2, 2), L(2, 3), L(3, 0), L(2, 4), L(4, 0)}, {0, 1, 10, 16}},
        {6, 6, {L(0, 2), L(2, 1), L(1, 3), L(3, 0), L(0, 4), L(4, 1), L(1, 5), L(5, 0)}, {0, 0, 3, 6}},
        {7, 6, {L(0, 1, 2), L(1, 2), L(2, 3), L(3, 0), L(1, 4), L(4, 5), L(5, 0)}, {0, 0, 3, 6}},
        {8, 6, {L(0, 1), L(1, 3), L(3, 2), L(2, 0), L(0, 4), L(4, 1), L(1, 5), L(5, 0)}, {0, 0, 3, 6}},
        {9, 7, {L(0, 1), L(1, 2), L(2, 3), L(3, 0), L(0, 4), L(4, 5), L(5, 6), L(6, 0)}, {0, 0, 1, 2}},
        {10, 3, {C(0, 1, 2), C(1, 2, 2)}, {4, 56, 300, 432}},
        {11, 4, {C(0, 1, 2), C(0, 2), C(0, 3)}, {0, 4, 68, 144}},
        {12, 3, {C(0, 1), C(1, 2, 2), C(2, 0)}, {0, 20, 196, 336}},
        {13, 5, {C(0, 1), C(0, 2), C(0, 3), C(0, 4)}, {0, 0, 12, 48}},
        {14, 4, {C(0, 1), C(1, 2), C(2, 3), C(3, 0)}, {0, 0, 16, 40}},
        {15, 4, {C(3, 0), C(0, 1), C(0, 2), C(2, 1)}, {0, 0, 24, 64}},
        {16, 4, {C(0, 1), C(1, 2, 2), C(2, 3)}, {0, 0, 40, 96}},
        {17, 5, {C(0, 1), C(0, 2), C(0, 3), C(3, 4)}, {0, 0, 4, 16}},
        {18, 5, {C(0, 1), C(1, 2), C(2, 3), C(3, 4)}, {0, 0, 4, 8}},
        {19, 2, {H(0, 1, 2)}, {24, 432, 3180, 5040}},
        {20, 3, {H(0, 1), H(0, 2)}, {0, 0, 108, 432}},
    };
}

} // namespace

const PairShape& pair_shape(int id) {
    static const std::vector<PairShape> shapes = build_shapes();
    if (id < 1 || id > num_pair_shapes) throw DomainError("unknown pair shape " + std::to_string(id));
    return shapes[static_cast<std::size_t>(id - 1)];
}

double pair_term_expectation(int id, double d) {
    if (!(d >= 1.0)) throw DomainError("pair_term_expectation needs d >= 1");
    const auto& p = pair_shape(id).poly;
    const double x = 1.0 / d;
    return p[0] + x * (p[1] + x * (p[2] + x * p[3]));
}

double pair_term_product(const PairShape& shape, const Eigen::MatrixXd& x) {
    if (static_cast<unsigned>(x.cols()) < shape.num_vertices) throw DomainError("latent sample has too few columns");
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.rows()));
    double prod = 1.0;
    for (const PairFactor& f : shape.factors) {
        const double m = scale * x.col(f.a).dot(x.col(f.b));
        const double m2 = m * m;
        double v = m;
        if (f.kind == FactorKind::centered) v = m2 - 1.0;
        if (f.kind == FactorKind::hermite) v = m2 * m2 - 6.0 * m2 + 3.0;
        prod *= f.power == 2 ? v * v : v;
    }
    return prod;
}

TraceMomentReport wishart_trace_moments(std::size_t k, std::size_t d) {
    if (k < 1 || d < 1) throw DomainError("wishart_trace_moments needs k, d >= 1");
    TraceMomentReport r;
    r.k = k;
    r.d = d;
    const double kk = static_cast<double>(k), dd = static_cast<double>(d);
    r.e_tr_sq_centered = 2.0 * kk / dd;
    r.e_tr_sq = kk * kk + 2.0 * kk / dd;
    r.e_tr_delta_sq = (kk * kk + kk) / dd;
    if (d >= k) r.var_tr_delta_sq_bound = 56.0 * kk * kk / (dd * dd);
    if (d >= 2 * k + 2) {
        r.e_inv_det_bound = std::exp(kk);
        r.e_log2_det_bound = 3.0 * kk;
    }
    return r;
}

void RunningMoments::merge(const RunningMoments& o) noexcept {
    if (o.n_ == 0) return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
    const double delta = o.mean_ - mean_;
    const double n = na + nb;
    mean_ += delta * nb / n;
    m2_ += o.m2_ + delta * delta * na * nb / n;
    n_ += o.n_;
}

double RunningMoments::stderr_mean() const noexcept {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_statistic needs two nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double best = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return best;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
    if (n == 0 || m == 0 || !(alpha > 0.0 && alpha < 1.0)) throw DomainError("bad KS critical value arguments");
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

} // namespace wml
