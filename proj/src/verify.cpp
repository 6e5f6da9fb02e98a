#include "wml/verify.hpp"

#include "wml/ensembles.hpp"
#include "wml/errors.hpp"
#include "wml/experiments.hpp"
#include "wml/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wml {

std::string to_string(CheckKind k) {
    switch (k) {
    case CheckKind::exact: return "exact";
    case CheckKind::bound: return "bound";
    case CheckKind::tolerance: return "tolerance";
    }
    return "?";
}

bool VerifyReport::passed() const {
    return std::all_of(items.begin(), items.end(), [](const VerifyItem& i) { return i.passed; });
}

namespace {

constexpr std::size_t block_size = 1024;

// Fills out[i] for i in [0, n) through f(rng, i); block b draws from
// Rng(derive_seed(seed, stream, b)), so values do not depend on the thread count.
template <class F>
void fill_blocks(std::vector<double>& out, std::size_t n, std::uint64_t seed, std::uint64_t stream, unsigned threads,
                 F&& f) {
    out.assign(n, 0.0);
    parallel_blocks(n, block_size, threads, [&](std::size_t begin, std::size_t end, unsigned) {
        Rng rng(derive_seed(seed, stream, begin / block_size));
        for (std::size_t i = begin; i < end; ++i) out[i] = f(rng, i);
    });
}

RunningMoments moments_of(const std::vector<double>& v) {
    RunningMoments m;
    for (double x : v) m.add(x);
    return m;
}

VerifyItem exact_item(std::string name, double predicted, const RunningMoments& m, double z_limit) {
    VerifyItem it;
    it.name = std::move(name);
    it.kind = CheckKind::exact;
    it.predicted = predicted;
    it.empirical = m.mean();
    it.std_error = m.stderr_mean();
    const double diff = it.empirical - predicted;
    it.z = it.std_error > 0 ? diff / it.std_error : (diff == 0 ? 0.0 : std::copysign(INFINITY, diff));
    it.passed = std::abs(it.z) <= z_limit;
    return it;
}

VerifyItem bound_item(std::string name, double bound, double empirical, double se, double z_limit) {
    VerifyItem it;
    it.name = std::move(name);
    it.kind = CheckKind::bound;
    it.predicted = bound;
    it.empirical = empirical;
    it.std_error = se;
    const double diff = empirical - bound;
    it.z = se > 0 ? diff / se : (diff <= 0 ? -INFINITY : INFINITY);
    it.passed = empirical - z_limit * se <= bound;
    return it;
}

VerifyItem tolerance_item(std::string name, double limit, double value) {
    VerifyItem it;
    it.name = std::move(name);
    it.kind = CheckKind::tolerance;
    it.predicted = limit;
    it.empirical = value;
    it.passed = value <= limit;
    return it;
}

// Standard error of the sample variance, from the fourth central moment.
double variance_stderr(const std::vector<double>& v, double mean, double var) {
    double m4 = 0.0;
    for (double x : v) {
        const double c = (x - mean) * (x - mean);
        m4 += c * c;
    }
    m4 /= static_cast<double>(v.size());
    return std::sqrt(std::max(0.0, m4 - var * var) / static_cast<double>(v.size()));
}

VerifyReport start(std::string suite, const VerifyOptions& opt) {
    if (opt.trials < 1) throw DomainError("verification needs at least one trial");
    VerifyReport r;
    r.suite = std::move(suite);
    r.trials = opt.trials;
    r.seed = opt.seed;
    r.z_limit = opt.z_limit;
    return r;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

} // namespace

VerifyReport verify_tables(const VerifyOptions& opt, const std::vector<int>& shapes, double d) {
    VerifyReport r = start("tables", opt);
    const auto dim = static_cast<Eigen::Index>(d);
    if (dim < 1 || static_cast<double>(dim) != d) throw DomainError("tables suite needs a positive integer d");
    std::vector<double> values;
    for (int id : shapes) {
        const PairShape& shape = pair_shape(id);
        fill_blocks(values, opt.trials, opt.seed, 0x534850ULL + static_cast<std::uint64_t>(id), opt.threads,
                    [&](Rng& rng, std::size_t) {
                        Eigen::MatrixXd x(dim, shape.num_vertices);
                        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
                        return pair_term_product(shape, x);
                    });
        r.items.push_back(exact_item("shape_" + std::to_string(id) + "_d" + fmt(d), pair_term_expectation(id, d),
                                     moments_of(values), opt.z_limit));
    }
    return r;
}

VerifyReport verify_trace_moments(const VerifyOptions& opt, const std::vector<std::pair<std::size_t, std::size_t>>& kd) {
    VerifyReport r = start("appendixA", opt);
    constexpr int q = 5;  // quantities per draw
    for (auto [k, d] : kd) {
        const TraceMomentReport pred = wishart_trace_moments(k, d);
        const auto K = static_cast<Eigen::Index>(k), D = static_cast<Eigen::Index>(d);
        std::vector<double> packed(opt.trials * q, 0.0);
        parallel_blocks(opt.trials, block_size, opt.threads, [&](std::size_t begin, std::size_t end, unsigned) {
            Rng rng(derive_seed(opt.seed, 0x415050ULL ^ (k << 20) ^ d, begin / block_size));
            Eigen::MatrixXd x(D, K);
            for (std::size_t t = begin; t < end; ++t) {
                for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
                const Eigen::MatrixXd m = (x.transpose() * x) / static_cast<double>(d);
                const double tr = m.trace();
                const Eigen::MatrixXd delta = m - Eigen::MatrixXd::Identity(K, K);
                const Eigen::LLT<Eigen::MatrixXd> llt(m);
                double logdet = 0.0;
                for (Eigen::Index i = 0; i < K; ++i) logdet += 2.0 * std::log(llt.matrixLLT()(i, i));
                double* slot = packed.data() + t * q;
                slot[0] = (tr - static_cast<double>(k)) * (tr - static_cast<double>(k));
                slot[1] = tr * tr;
                slot[2] = delta.squaredNorm();
                slot[3] = std::exp(-logdet);
                slot[4] = logdet * logdet;
            }
        });
        std::vector<double> col[q];
        for (int j = 0; j < q; ++j) {
            col[j].resize(opt.trials);
            for (std::size_t t = 0; t < opt.trials; ++t) col[j][t] = packed[t * q + j];
        }
        const std::string tag = "_k" + std::to_string(k) + "_d" + std::to_string(d);
        r.items.push_back(exact_item("a_tr_centered_sq" + tag, pred.e_tr_sq_centered, moments_of(col[0]), opt.z_limit));
        r.items.push_back(exact_item("b_tr_sq" + tag, pred.e_tr_sq, moments_of(col[1]), opt.z_limit));
        const RunningMoments c = moments_of(col[2]);
        r.items.push_back(exact_item("c_tr_delta_sq" + tag, pred.e_tr_delta_sq, c, opt.z_limit));
        if (pred.var_tr_delta_sq_bound) {
            const double var = c.variance();
            r.items.push_back(bound_item("d_var_tr_delta_sq" + tag, *pred.var_tr_delta_sq_bound, var,
                                         variance_stderr(col[2], c.mean(), var), opt.z_limit));
        }
        if (pred.e_inv_det_bound) {
            const RunningMoments e = moments_of(col[3]);
            r.items.push_back(bound_item("e_inv_det" + tag, *pred.e_inv_det_bound, e.mean(), e.stderr_mean(), opt.z_limit));
        }
        if (pred.e_log2_det_bound) {
            const RunningMoments f = moments_of(col[4]);
            r.items.push_back(bound_item("f_log2_det" + tag, *pred.e_log2_det_bound, f.mean(), f.stderr_mean(), opt.z_limit));
        }
    }
    return r;
}

VerifyReport verify_bartlett(const VerifyOptions& opt, std::size_t d, std::size_t k) {
    VerifyReport r = start("bartlett", opt);
    if (k < 1 || k > d) throw DomainError("bartlett suite needs 1 <= k <= d");
    const auto K = static_cast<Eigen::Index>(k), D = static_cast<Eigen::Index>(d);
    const std::size_t stride = k * k + 1;  // W column-major, then reconstruction error
    std::vector<double> packed(opt.trials * stride, 0.0);
    parallel_blocks(opt.trials, block_size, opt.threads, [&](std::size_t begin, std::size_t end, unsigned) {
        Rng rng(derive_seed(opt.seed, 0x42524cULL, begin / block_size));
        for (std::size_t t = begin; t < end; ++t) {
            const LatentMatrix x = sample_latent(d, k, rng);
            const BartlettDecomposition b = bartlett_decompose(x);
            double* slot = packed.data() + t * stride;
            std::copy(b.w.data(), b.w.data() + K * K, slot);
            const double err = (x.x - b.u * b.w.transpose()).cwiseAbs().maxCoeff();
            slot[k * k] = err / x.x.cwiseAbs().maxCoeff();
        }
    });
    std::vector<double> v(opt.trials);
    auto gather = [&](std::size_t offset, auto&& transform) {
        for (std::size_t t = 0; t < opt.trials; ++t) v[t] = transform(packed[t * stride + offset]);
    };
    for (Eigen::Index i = 0; i < K; ++i) {
        gather(static_cast<std::size_t>(i * K + i), [](double w) { return w * w; });
        r.items.push_back(exact_item("w" + std::to_string(i + 1) + std::to_string(i + 1) + "_sq_mean",
                                     static_cast<double>(D - i), moments_of(v), opt.z_limit));
    }
    for (Eigen::Index j = 0; j < K; ++j) {
        for (Eigen::Index i = j + 1; i < K; ++i) {
            gather(static_cast<std::size_t>(j * K + i), [](double w) { return w; });
            const RunningMoments m = moments_of(v);
            const std::string name = "w" + std::to_string(i + 1) + std::to_string(j + 1);
            r.items.push_back(exact_item(name + "_mean", 0.0, m, opt.z_limit));
            r.items.push_back(tolerance_item(name + "_var_rel_err", 0.05, std::abs(m.variance() - 1.0)));
        }
    }
    double worst = 0.0;
    for (std::size_t t = 0; t < opt.trials; ++t) worst = std::max(worst, packed[t * stride + k * k]);
    r.items.push_back(tolerance_item("max_reconstruction_rel_err", 1e-8, worst));
    return r;
}

VerifyReport verify_kappa_laws(const VerifyOptions& opt, std::size_t leaves, std::size_t d) {
    VerifyReport r = start("kappa_laws", opt);
    const auto graph = std::make_shared<const Graph>(star_graph(leaves));
    const StatisticPlan plan(*graph);
    for (Ensemble ens : {Ensemble::goe, Ensemble::wishart}) {
        const KappaRLaw law = kappa_r_law(*graph, d, ens);
        const std::string name = to_string(ens);
        const std::uint64_t tag = ens == Ensemble::goe ? seed_tag::goe : seed_tag::wishart;
        std::vector<double> sample(opt.trials), reference;
        parallel_blocks(opt.trials, block_size, opt.threads, [&](std::size_t begin, std::size_t end, unsigned) {
            Rng rng(derive_seed(opt.seed, tag, begin / block_size));
            WishartSampler wishart(graph, d);
            std::vector<double> values(graph->num_edges());
            for (std::size_t t = begin; t < end; ++t) {
                if (ens == Ensemble::goe)
                    sample_goe(*graph, rng, values);
                else
                    wishart.sample(rng, values);
                sample[t] = plan.kappa_r(values);
            }
        });
        fill_blocks(reference, opt.trials, opt.seed, seed_tag::reference ^ tag, opt.threads,
                    [&](Rng& rng, std::size_t) { return law.sample(rng); });
        const RunningMoments m = moments_of(sample);
        r.items.push_back(exact_item(name + "_mean", law.mean(), m, opt.z_limit));
        const double var = m.variance();
        VerifyItem vi = exact_item(name + "_variance", law.variance(), m, opt.z_limit);
        vi.empirical = var;
        vi.std_error = variance_stderr(sample, m.mean(), var);
        vi.z = (var - law.variance()) / vi.std_error;
        vi.passed = std::abs(vi.z) <= opt.z_limit;
        r.items.push_back(vi);
        r.items.push_back(tolerance_item(name + "_ks", ks_critical_value(opt.trials, opt.trials, 0.01),
                                         ks_statistic(sample, reference)));
    }
    return r;
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"tables", "appendixA", "bartlett", "kappa_laws"};
    return names;
}

VerifyReport run_verify_suite(const std::string& name, const VerifyOptions& opt) {
    if (name == "tables") {
        std::vector<int> all(num_pair_shapes);
        for (int i = 0; i < num_pair_shapes; ++i) all[static_cast<std::size_t>(i)] = i + 1;
        return verify_tables(opt, all, 20.0);
    }
    if (name == "appendixA") return verify_trace_moments(opt, {{3, 30}, {6, 60}});
    if (name == "bartlett") return verify_bartlett(opt, 30, 5);
    if (name == "kappa_laws") return verify_kappa_laws(opt, 100, 30);
    throw ParseError("unknown verification suite '" + name + "'", name);
}

} // namespace wml
