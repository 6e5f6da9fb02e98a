#include "wml/experiments.hpp"

#include "wml/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

namespace wml {

std::string to_string(TestKind t) {
    switch (t) {
    case TestKind::deg3: return "deg3";
    case TestKind::deg4: return "deg4";
    case TestKind::maxdeg: return "maxdeg";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::wishart: return "wishart";
    case Verdict::goe: return "goe";
    case Verdict::inapplicable: return "inapplicable";
    }
    return "?";
}

TestKind parse_test(const std::string& s) {
    for (TestKind t : {TestKind::deg3, TestKind::deg4, TestKind::maxdeg})
        if (to_string(t) == s) return t;
    throw ParseError("unknown test '" + s + "'", s);
}

PreparedTest::PreparedTest(const Graph& g, std::size_t d, TestKind kind) : kind_(kind), plan_(g) {
    if (d < 1) throw DomainError("tests need d >= 1");
    const double dd = static_cast<double>(d);
    switch (kind) {
    case TestKind::deg3: {
        const double c3 = static_cast<double>(plan_.triangles().size());
        applicable_ = c3 > 0;
        threshold_ = 0.5 * c3 / std::sqrt(dd);
        break;
    }
    case TestKind::deg4: {
        const double sum = static_cast<double>(plan_.cycles().size() + plan_.wedges().size() + plan_.num_edges());
        applicable_ = sum > 0;
        threshold_ = 0.5 * sum / dd;
        break;
    }
    case TestKind::maxdeg: {
        const double D = static_cast<double>(plan_.max_degree());
        applicable_ = D > 0;
        threshold_ = applicable_ ? std::pow(dd * D, -0.25) : 0.0;
        break;
    }
    }
}

TestVerdict PreparedTest::apply(std::span<const double> values) const {
    TestVerdict v;
    v.threshold = threshold_;
    if (!applicable_) return v;
    switch (kind_) {
    case TestKind::deg3:
        v.statistic_value = plan_.kappa3(values);
        v.predicted = v.statistic_value >= threshold_ ? Verdict::wishart : Verdict::goe;
        break;
    case TestKind::deg4:
        v.statistic_value = plan_.kappa4(values).total;
        v.predicted = v.statistic_value >= threshold_ ? Verdict::wishart : Verdict::goe;
        break;
    case TestKind::maxdeg:
        v.statistic_value = plan_.kappa_r(values);
        v.predicted = std::abs(v.statistic_value - 1.0) <= threshold_ ? Verdict::goe : Verdict::wishart;
        break;
    }
    return v;
}

TestVerdict deg3_test(const MaskedMatrix& m, std::size_t d) {
    return PreparedTest(m.graph(), d, TestKind::deg3).apply(m.values());
}
TestVerdict deg4_test(const MaskedMatrix& m, std::size_t d) {
    return PreparedTest(m.graph(), d, TestKind::deg4).apply(m.values());
}
TestVerdict maxdeg_test(const MaskedMatrix& m, std::size_t d) {
    return PreparedTest(m.graph(), d, TestKind::maxdeg).apply(m.values());
}

unsigned resolve_threads(unsigned threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_blocks(std::size_t count, std::size_t block, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& f) {
    if (block == 0) block = 1;
    const std::size_t blocks = (count + block - 1) / block;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(blocks, 1)));
    std::atomic<std::size_t> next{0};
    auto run = [&](unsigned worker) {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= blocks) return;
            f(b * block, std::min(count, (b + 1) * block), worker);
        }
    };
    if (workers <= 1) {
        run(0);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                run(w);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(blocks);
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

ErrorEstimate estimate_test_error(GraphPtr g, std::size_t d, TestKind test, std::size_t trials,
                                  std::uint64_t base_seed, unsigned threads, WishartMethod method) {
    if (!g) throw DomainError("null mask graph");
    if (trials == 0) throw DomainError("trials must be positive");
    const PreparedTest prepared(*g, d, test);
    if (!prepared.applicable()) throw InapplicableError(to_string(test) + " test is inapplicable to this mask");

    const unsigned workers = resolve_threads(threads);
    std::vector<std::size_t> err1(workers, 0), err2(workers, 0);
    std::vector<std::unique_ptr<WishartSampler>> samplers(workers);
    const std::size_t m = g->num_edges();

    parallel_blocks(trials, 256, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        if (!samplers[w]) samplers[w] = std::make_unique<WishartSampler>(g, d, method);
        std::vector<double> values(m);
        for (std::size_t i = begin; i < end; ++i) {
            Rng null_rng(derive_seed(base_seed, seed_tag::goe, i));
            sample_goe(*g, null_rng, values);
            if (prepared.apply(values).predicted == Verdict::wishart) ++err1[w];

            Rng alt_rng(derive_seed(base_seed, seed_tag::wishart, i));
            samplers[w]->sample(alt_rng, values);
            if (prepared.apply(values).predicted == Verdict::goe) ++err2[w];
        }
    });

    ErrorEstimate e;
    e.trials = trials;
    for (unsigned w = 0; w < workers; ++w) {
        e.errors1 += err1[w];
        e.errors2 += err2[w];
    }
    const double n = static_cast<double>(trials);
    e.type1 = static_cast<double>(e.errors1) / n;
    e.type2 = static_cast<double>(e.errors2) / n;
    e.stderr1 = std::sqrt(e.type1 * (1.0 - e.type1) / n);
    e.stderr2 = std::sqrt(e.type2 * (1.0 - e.type2) / n);
    e.tv_lower = std::max(0.0, 1.0 - e.type1 - e.type2);
    return e;
}

namespace {

Ratio make_ratio(std::string name, double num, double den) {
    Ratio r;
    r.name = std::move(name);
    r.numerator = num;
    r.denominator = den;
    r.ratio = num == 0.0 ? 0.0 : num / den;
    r.regime_suggestive = r.ratio < 0.1;
    return r;
}

} // namespace

HypothesisReport convergence_report(const Graph& g, std::size_t d) { return convergence_report(g, census(g), d); }

HypothesisReport convergence_report(const Graph& g, const SubgraphCensus& c, std::size_t d) {
    if (d < 1) throw DomainError("convergence_report needs d >= 1");
    HypothesisReport r;
    r.n = g.num_vertices();
    r.d = d;
    const auto f = [](Count x) { return to_double(x); };
    const double dd = static_cast<double>(d);
    const double logn = r.n >= 1 ? std::log(static_cast<double>(r.n)) : 0.0;
    const double e = f(c.e);
    const double four = f(c.c4) + f(c.p2) + e;

    r.convergence.push_back(make_ratio("r_tri", f(c.c3), dd));
    r.convergence.push_back(make_ratio("r_4cyc", four, dd * dd));
    r.convergence.push_back(make_ratio("r_k18", f(c.k18) + std::pow(logn, 8) * (f(c.k14) + e), std::pow(dd, 4)));

    if (c.oriented) {
        const OrientedCensus& o = *c.oriented;
        r.bipartite.push_back(make_ratio("b_4cyc", four, dd * dd));
        r.bipartite.push_back(make_ratio("b_k14", f(o.k14) + e * std::pow(logn, 3), std::pow(dd, 3)));
        r.bipartite.push_back(make_ratio(
            "b_k13_k24", f(o.k13) * f(o.k13) * f(o.k24) + e * e * (f(o.k14) + f(o.k24)) * std::pow(logn, 4),
            std::pow(dd, 8)));
        r.bipartite.push_back(make_ratio("b_p4", e * e * f(o.p4) * std::pow(logn, 4), std::pow(dd, 9)));
    }

    r.regularity.push_back(make_ratio("reg3", f(c.c3_2e) + f(c.c3_2v), f(c.c3) * f(c.c3)));
    r.regularity.push_back(make_ratio("reg4", f(c.k14) + f(c.k24) + f(c.c4_2e) + f(c.c4_2v), four * four));

    if (r.n > 0) {
        const MaxDegree md = max_degree_vertex(g);
        if (md.degree >= 1) r.degree = make_ratio("d_over_maxdeg", dd, static_cast<double>(md.degree));
    }
    return r;
}

namespace {

void check_threshold_args(double n, double p) {
    if (!(n >= 2.0)) throw DomainError("threshold formulas need n >= 2");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("threshold formulas need 0 <= p <= 1");
}

ThresholdTerms finish(std::vector<std::pair<std::string, double>> terms) {
    ThresholdTerms t;
    t.terms = std::move(terms);
    for (const auto& [name, v] : t.terms) t.total += v;
    return t;
}

} // namespace

ThresholdTerms er_threshold_terms(double n, double p) {
    check_threshold_args(n, p);
    const double l = std::log(n);
    return finish({
        {"n^3 p^3", std::pow(n * p, 3)},
        {"n^{3/2} p", std::pow(n, 1.5) * p},
        {"n p^{1/2}", n * std::sqrt(p)},
        {"n^{1/2} p^{1/4} log^2 n", std::sqrt(n) * std::pow(p, 0.25) * l * l},
        {"log^3 n", l * l * l},
    });
}

ThresholdTerms bip_threshold_terms(double n, double m, double p) {
    check_threshold_args(n, p);
    if (!(m >= 1.0)) throw DomainError("bipartite threshold needs m >= 1");
    const double l = std::log(n);
    const double nmp = n * m * p;
    return finish({
        {"n m p^2", n * m * p * p},
        {"n m^{1/2} p", n * std::sqrt(m) * p},
        {"(nmp)^{1/2}", std::sqrt(nmp)},
        {"(nmp)^{1/3} log n", std::cbrt(nmp) * l},
        {"(nmp)^{1/4} log^{5/4} n", std::pow(nmp, 0.25) * std::pow(l, 1.25)},
        {"log^{3/2} n", std::pow(l, 1.5)},
    });
}

double er_threshold(double n, double p) { return er_threshold_terms(n, p).total; }
double bip_threshold(double n, double m, double p) { return bip_threshold_terms(n, m, p).total; }

std::vector<SweepRow> phase_sweep(const SweepConfig& cfg) {
    if (cfg.p_grid.empty() || cfg.d_grid.empty()) throw DomainError("sweep grids must be nonempty");
    if (cfg.trials == 0) throw DomainError("trials must be positive");
    const bool bipartite = cfg.family == "biper" || cfg.family == "kbip";
    if (!bipartite && cfg.family != "er" && cfg.family != "complete")
        throw DomainError("unknown sweep family '" + cfg.family + "'");

    std::vector<SweepRow> rows;
    for (std::size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
        const double p = cfg.p_grid[pi];
        Rng mask_rng(derive_seed(cfg.base_seed, seed_tag::mask, pi));
        Graph g;
        if (cfg.family == "er") g = erdos_renyi(cfg.n, p, mask_rng);
        else if (cfg.family == "biper") g = bipartite_erdos_renyi(cfg.n, cfg.m, p, mask_rng);
        else if (cfg.family == "kbip") g = complete_bipartite(cfg.n, cfg.m);
        else g = complete_graph(cfg.n);
        const auto graph = std::make_shared<const Graph>(std::move(g));
        const std::uint64_t trial_seed = derive_seed(cfg.base_seed, seed_tag::trial, pi);

        double theory = std::numeric_limits<double>::quiet_NaN();
        const double pe = cfg.family == "er" || cfg.family == "biper" ? p : 1.0;
        if (cfg.n >= 2) {
            if (bipartite && cfg.m >= 1) theory = bip_threshold(static_cast<double>(cfg.n), static_cast<double>(cfg.m), pe);
            if (!bipartite) theory = er_threshold(static_cast<double>(cfg.n), pe);
        }

        for (std::size_t d : cfg.d_grid) {
            SweepRow row;
            row.family = cfg.family;
            row.n = cfg.n;
            if (bipartite) row.m = cfg.m;
            row.p = p;
            row.d = d;
            row.test = cfg.test;
            row.seed = trial_seed;
            row.theory_threshold = theory;
            try {
                row.estimate = estimate_test_error(graph, d, cfg.test, cfg.trials, trial_seed, cfg.threads);
            } catch (const InapplicableError&) {
                row.inapplicable = true;
                row.estimate.trials = cfg.trials;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string sweep_csv_header() {
    return "family,n,m,p,d,test,type1,type2,tv_lower,stderr1,stderr2,trials,seed,theory_threshold";
}

std::string sweep_csv_row(const SweepRow& r) {
    auto g6 = [](double x) {
        if (std::isnan(x)) return std::string("nan");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", x);
        return std::string(buf);
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const ErrorEstimate& e = r.estimate;
    std::string s = r.family + "," + std::to_string(r.n) + "," + (r.m ? std::to_string(*r.m) : "") + "," + g6(r.p) +
                    "," + std::to_string(r.d) + "," + to_string(r.test) + ",";
    s += g6(r.inapplicable ? nan : e.type1) + "," + g6(r.inapplicable ? nan : e.type2) + "," +
         g6(r.inapplicable ? nan : e.tv_lower) + "," + g6(r.inapplicable ? nan : e.stderr1) + "," +
         g6(r.inapplicable ? nan : e.stderr2) + ",";
    s += std::to_string(e.trials) + "," + std::to_string(r.seed) + "," + g6(r.theory_threshold);
    return s;
}

} // namespace wml
