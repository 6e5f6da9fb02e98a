#include "wml/census.hpp"
#include "wml/ensembles.hpp"
#include "wml/errors.hpp"
#include "wml/statistics.hpp"

#include <doctest.h>

#include <cmath>

using namespace wml;

namespace {

GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

MaskedMatrix constant(const GraphPtr& g, double v) { return MaskedMatrix(g, std::vector<double>(g->num_edges(), v)); }

} // namespace

TEST_CASE("kappa3 on fixed inputs") {
    CHECK(kappa3(constant(share(complete_graph(4)), 1.0)) == doctest::Approx(4.0));
    CHECK(kappa3(constant(share(complete_bipartite(3, 3)), 1.0)) == 0.0);
    CHECK(kappa3(constant(share(Graph(3, {})), 1.0)) == 0.0);
}

TEST_CASE("kappa4 on fixed inputs") {
    const Kappa4Breakdown k = kappa4(constant(share(cycle_graph(4)), 0.0));
    CHECK(k.c4_part == 0.0);
    CHECK(k.p2_part == doctest::Approx(4.0));
    CHECK(k.e_part == doctest::Approx(12.0));
    CHECK(k.total == doctest::Approx(16.0));
    const Kappa4Breakdown z = kappa4(constant(share(Graph(5, {})), 0.3));
    CHECK(z.total == 0.0);
    CHECK(z.c4_part == 0.0);
}

TEST_CASE("kappa4 matches a direct evaluation") {
    Rng rng(4);
    const GraphPtr g = share(erdos_renyi(9, 0.6, rng));
    const MaskedMatrix m = masked_goe(g, rng);
    const std::size_t n = g->num_vertices();
    auto val = [&](Vertex a, Vertex b) { return m.value(a, b); };
    double c4 = 0, p2 = 0, e = 0;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
            for (Vertex c = 0; c < n; ++c)
                for (Vertex dd = 0; dd < n; ++dd) {
                    if (a == b || a == c || a == dd || b == c || b == dd || c == dd) continue;
                    if (g->has_edge(a, b) && g->has_edge(b, c) && g->has_edge(c, dd) && g->has_edge(dd, a))
                        c4 += val(a, b) * val(b, c) * val(c, dd) * val(dd, a);
                }
    c4 /= 8;
    for (Vertex v = 0; v < n; ++v) {
        auto nb = g->neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                const double x = val(v, nb[i]), y = val(v, nb[j]);
                p2 += (x * x - 1) * (y * y - 1);
            }
    }
    for (double x : m.values()) e += x * x * x * x - 6 * x * x + 3;
    const Kappa4Breakdown k = kappa4(m);
    CHECK(k.c4_part == doctest::Approx(c4));
    CHECK(k.p2_part == doctest::Approx(p2));
    CHECK(k.e_part == doctest::Approx(e));
}

TEST_CASE("kappa_r on fixed inputs") {
    CHECK(kappa_r(constant(share(star_graph(7)), 1.0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(kappa_r(constant(share(Graph(3, {})), 1.0)), InapplicableError);
}

TEST_CASE("parsing names") {
    CHECK(parse_ensemble("goe") == Ensemble::goe);
    CHECK(parse_statistic("kappa4_p2") == Statistic::kappa4_p2);
    CHECK(to_string(Statistic::kappa_r) == "kappa_r");
    CHECK_THROWS_AS(parse_ensemble("gue"), ParseError);
}

TEST_CASE("predicted moments") {
    const MomentPrediction k5 = predicted_moments(complete_graph(5), std::nullopt, Statistic::kappa3, Ensemble::goe);
    CHECK(k5.mean == 0.0);
    CHECK(k5.variance == 10.0);
    CHECK(k5.mean_kind == MeanKind::exact);
    CHECK(k5.variance_kind == VarianceKind::exact);

    const MomentPrediction bip = predicted_moments(complete_bipartite(3, 3), 10, Statistic::kappa3, Ensemble::wishart);
    CHECK(bip.mean == 0.0);
    CHECK(bip.mean_kind == MeanKind::exact);
    CHECK(bip.variance_kind == VarianceKind::upper_bound);

    const Graph c5 = cycle_graph(5);
    const MomentPrediction e = predicted_moments(c5, std::nullopt, Statistic::kappa4_e, Ensemble::goe);
    CHECK(e.variance == 24.0 * 5);
    const MomentPrediction full = predicted_moments(c5, std::nullopt, Statistic::kappa4, Ensemble::goe);
    REQUIRE(full.edge_constant.has_value());
    CHECK(*full.edge_constant == 24.0);
    CHECK(*full.published_edge_constant == 6.0);
    CHECK(full.variance == 0 + 4 * 5 + 24 * 5);

    const MomentPrediction wm = predicted_moments(complete_graph(6), 10, Statistic::kappa4, Ensemble::wishart);
    CHECK(wm.mean == doctest::Approx((45 + 2 * 60 + 6 * 15) / 10.0));

    CHECK_THROWS_AS(predicted_moments(c5, std::nullopt, Statistic::kappa_r, Ensemble::goe), UnsupportedPrediction);
    CHECK_THROWS_AS(predicted_moments(c5, std::nullopt, Statistic::kappa3, Ensemble::wishart), DomainError);
}

TEST_CASE("quartic edge constant is 24") {
    // Hermite orthogonality: He4 = x^4 - 6x^2 + 3 has E He4^2 = 4! = 24.
    Rng rng(24);
    RunningMoments m;
    for (int i = 0; i < 10000000; ++i) {
        const double g = rng.normal();
        const double h = g * g * g * g - 6 * g * g + 3;
        m.add(h * h);
    }
    CHECK(std::abs(m.mean() - 24.0) < 4 * m.stderr_mean());
    CHECK(std::abs(m.mean() - 6.0) > 10 * m.stderr_mean());
}

TEST_CASE("wishart kappa3 mean") {
    Rng grng(derive_seed(1, seed_tag::graph, 0));
    const GraphPtr g = share(erdos_renyi(40, 0.3, grng));
    const double c3 = to_double(census(*g).c3);
    const StatisticPlan plan(*g);
    WishartSampler sampler(g, 100);
    std::vector<double> v(g->num_edges());
    RunningMoments m;
    for (std::size_t i = 0; i < 20000; ++i) {
        Rng rng(derive_seed(3, seed_tag::wishart, i));
        sampler.sample(rng, v);
        m.add(plan.kappa3(v));
    }
    CHECK(std::abs(m.mean() - c3 / 10.0) < 4 * m.stderr_mean());
}

TEST_CASE("wishart kappa4 component means on K8,8") {
    const GraphPtr g = share(complete_bipartite(8, 8));
    const SubgraphCensus cs = census(*g);
    const double d = 60;
    const StatisticPlan plan(*g);
    WishartSampler sampler(g, 60);
    std::vector<double> v(g->num_edges());
    RunningMoments c4, p2, e;
    for (std::size_t i = 0; i < 20000; ++i) {
        Rng rng(derive_seed(4, seed_tag::wishart, i));
        sampler.sample(rng, v);
        const Kappa4Breakdown k = plan.kappa4(v);
        c4.add(k.c4_part);
        p2.add(k.p2_part);
        e.add(k.e_part);
    }
    CHECK(std::abs(c4.mean() - to_double(cs.c4) / d) < 4 * c4.stderr_mean());
    CHECK(std::abs(p2.mean() - 2 * to_double(cs.p2) / d) < 4 * p2.stderr_mean());
    CHECK(std::abs(e.mean() - 6 * to_double(cs.e) / d) < 4 * e.stderr_mean());
}

TEST_CASE("kappa_r variance under both ensembles") {
    const GraphPtr g = share(star_graph(200));
    const StatisticPlan plan(*g);
    std::vector<double> v(200);
    RunningMoments goe, wis;
    for (std::size_t i = 0; i < 100000; ++i) {
        Rng rng(derive_seed(5, seed_tag::goe, i));
        sample_goe(*g, rng, v);
        goe.add(plan.kappa_r(v));
    }
    WishartSampler sampler(g, 20);
    for (std::size_t i = 0; i < 100000; ++i) {
        Rng rng(derive_seed(5, seed_tag::wishart, i));
        sampler.sample(rng, v);
        wis.add(plan.kappa_r(v));
    }
    const double D = 200, d = 20;
    CHECK(goe.variance() == doctest::Approx(2 / D).epsilon(0.05));
    CHECK(wis.variance() == doctest::Approx(2 / D + 2 / d + 4 / (D * d)).epsilon(0.05));

    const KappaRLaw lg = kappa_r_law(*g, std::nullopt, Ensemble::goe);
    const KappaRLaw lw = kappa_r_law(*g, 20, Ensemble::wishart);
    CHECK(lg.mean() == 1.0);
    CHECK(lw.mean() == 1.0);
    CHECK(lg.variance() == doctest::Approx(2 / D));
    CHECK(lw.variance() == doctest::Approx(2 / D + 2 / d + 4 / (D * d)));

    // The closed-form variance against direct sampling of the product law.
    Rng rng(6);
    RunningMoments law;
    for (int i = 0; i < 200000; ++i) law.add(lw.sample(rng));
    CHECK(law.variance() == doctest::Approx(lw.variance()).epsilon(0.03));
    CHECK(std::abs(law.mean() - 1.0) < 4 * law.stderr_mean());
}

TEST_CASE("pair shape polynomials") {
    CHECK(pair_term_expectation(1, 1e12) == doctest::Approx(1.0));
    CHECK(pair_term_expectation(1, 20) == doctest::Approx(1.54));
    CHECK(pair_term_expectation(3, 10) == doctest::Approx(0.12));
    CHECK_THROWS_AS(pair_shape(0), DomainError);
    CHECK_THROWS_AS(pair_shape(num_pair_shapes + 1), DomainError);
    for (int id = 1; id <= num_pair_shapes; ++id) REQUIRE(pair_shape(id).id == id);
}

TEST_CASE("shape 19 defining product by direct simulation") {
    const PairShape& s = pair_shape(19);
    Rng rng(19);
    RunningMoments m;
    for (int i = 0; i < 1000000; ++i) m.add(pair_term_product(s, sample_latent(20, s.num_vertices, rng).x));
    CHECK(std::abs(m.mean() - pair_term_expectation(19, 20)) < 4 * m.stderr_mean());
}

TEST_CASE("trace moments") {
    CHECK(wishart_trace_moments(1, 1).e_tr_sq_centered == doctest::Approx(2.0));
    const TraceMomentReport r = wishart_trace_moments(6, 60);
    CHECK(r.e_tr_delta_sq == doctest::Approx(0.7));
    CHECK(r.e_inv_det_bound.has_value());
    CHECK_FALSE(wishart_trace_moments(6, 10).e_inv_det_bound.has_value());
}

TEST_CASE("running moments merge equals sequential accumulation") {
    RunningMoments a, b, all;
    for (int i = 0; i < 100; ++i) {
        const double x = std::sin(i) * 3 + i * 0.01;
        (i < 37 ? a : b).add(x);
        all.add(x);
    }
    a.merge(b);
    CHECK(a.count() == all.count());
    CHECK(a.mean() == doctest::Approx(all.mean()));
    CHECK(a.variance() == doctest::Approx(all.variance()));
}

TEST_CASE("two-sample ks") {
    CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(ks_statistic({1, 2}, {3, 4}) == 1.0);
    CHECK(ks_critical_value(10000, 10000, 0.01) == doctest::Approx(1.62762 * std::sqrt(2.0 / 10000)).epsilon(1e-4));
}
