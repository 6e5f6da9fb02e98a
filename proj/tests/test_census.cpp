#include "wml/census.hpp"
#include "wml/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

using namespace wml;

namespace {

// Shapes written out independently of pattern_graph.
struct Shape {
    std::size_t n;
    std::vector<std::pair<unsigned, unsigned>> edges;
    std::vector<int> side;  // 1 left, 0 right, empty for plain
};

Shape shape_of(const Pattern& p) {
    switch (p.tag) {
    case PatternTag::E: return {2, {{0, 1}}, {}};
    case PatternTag::P2: return {3, {{0, 1}, {1, 2}}, {}};
    case PatternTag::P3: return {4, {{0, 1}, {1, 2}, {2, 3}}, {}};
    case PatternTag::P4: return {5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {}};
    case PatternTag::C3: return {3, {{0, 1}, {1, 2}, {0, 2}}, {}};
    case PatternTag::C4: return {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {}};
    case PatternTag::C3_PLUS: return {4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, {}};
    case PatternTag::K13_PLUS: return {5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}, {}};
    case PatternTag::C3_2E: return {4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}, {}};
    case PatternTag::C3_2V: return {5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}, {}};
    case PatternTag::C4_2E: return {6, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {4, 5}, {1, 5}}, {}};
    case PatternTag::C4_2V: return {7, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 6}}, {}};
    case PatternTag::C4_2EV:
        // edge 0-1, 3-path 0-2-3-1, 2-paths 0-4-1 and 0-5-1
        return {6, {{0, 1}, {0, 2}, {2, 3}, {1, 3}, {0, 4}, {1, 4}, {0, 5}, {1, 5}}, {}};
    case PatternTag::K23: return {5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}, {}};
    case PatternTag::K24:
        return {6, {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}}, {}};
    case PatternTag::K1K: {
        Shape s{p.k + 1, {}, {}};
        for (unsigned i = 1; i <= p.k; ++i) s.edges.push_back({0, i});
        return s;
    }
    case PatternTag::OK: {
        Shape s{p.r + p.s, {}, {}};
        for (unsigned i = 0; i < p.r + p.s; ++i) s.side.push_back(i < p.r ? 1 : 0);
        for (unsigned i = 0; i < p.r; ++i)
            for (unsigned j = 0; j < p.s; ++j) s.edges.push_back({i, p.r + j});
        return s;
    }
    case PatternTag::OP4: return {5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {0, 1, 0, 1, 0}};
    }
    return {};
}

// Injective edge-preserving maps from the shape into a host given by an adjacency test.
std::uint64_t count_maps(const Shape& h, std::size_t n, const std::function<bool(unsigned, unsigned)>& adj,
                         const std::function<int(unsigned)>& side) {
    std::vector<std::vector<unsigned>> back(h.n);
    for (auto [a, b] : h.edges) {
        if (a < b) back[b].push_back(a);
        else back[a].push_back(b);
    }
    std::vector<unsigned> img(h.n);
    std::vector<bool> used(n, false);
    std::uint64_t total = 0;
    std::function<void(unsigned)> go = [&](unsigned i) {
        if (i == h.n) {
            ++total;
            return;
        }
        for (unsigned v = 0; v < n; ++v) {
            if (used[v]) continue;
            if (!h.side.empty() && side(v) != h.side[i]) continue;
            bool ok = true;
            for (unsigned j : back[i])
                if (!adj(img[j], v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            used[v] = true;
            img[i] = v;
            go(i + 1);
            used[v] = false;
        }
    };
    go(0);
    return total;
}

std::uint64_t oracle_count(const Graph& g, const Pattern& p) {
    const Shape h = shape_of(p);
    auto hadj = [&](unsigned a, unsigned b) {
        for (auto [x, y] : h.edges)
            if ((x == a && y == b) || (x == b && y == a)) return true;
        return false;
    };
    auto hside = [&](unsigned v) { return h.side.empty() ? 0 : h.side[v]; };
    const std::uint64_t aut = count_maps(h, h.n, hadj, hside);
    auto gadj = [&](unsigned a, unsigned b) { return g.has_edge(a, b); };
    auto gside = [&](unsigned v) { return g.is_oriented() ? (g.is_left(v) ? 1 : 0) : 0; };
    const std::uint64_t maps = count_maps(h, g.num_vertices(), gadj, gside);
    REQUIRE(maps % aut == 0);
    return maps / aut;
}

std::vector<Pattern> plain_patterns() {
    std::vector<Pattern> out;
    for (PatternTag t : {PatternTag::E, PatternTag::P2, PatternTag::P3, PatternTag::P4, PatternTag::C3, PatternTag::C4,
                         PatternTag::C3_PLUS, PatternTag::K13_PLUS, PatternTag::C3_2E, PatternTag::C3_2V,
                         PatternTag::C4_2E, PatternTag::C4_2V, PatternTag::C4_2EV, PatternTag::K23, PatternTag::K24})
        out.push_back(Pattern::plain(t));
    for (unsigned k : {1u, 2u, 3u, 4u, 5u}) out.push_back(Pattern::star(k));
    return out;
}

std::vector<Pattern> oriented_patterns() {
    std::vector<Pattern> out;
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned s = 1; s <= 4; ++s) out.push_back(Pattern::oriented_biclique(r, s));
    out.push_back(Pattern::oriented_path4());
    return out;
}

std::size_t c(std::size_t n, std::size_t k) { return static_cast<std::size_t>(binomial(n, static_cast<unsigned>(k))); }

} // namespace

TEST_CASE("pattern_graph agrees with the reference shapes") {
    for (const Pattern& p : plain_patterns()) {
        const PatternGraph pg = pattern_graph(p);
        const Shape s = shape_of(p);
        CHECK(pg.num_vertices == s.n);
        CHECK(pg.edges.size() == s.edges.size());
        // Same edge count and exactly one embedded copy means isomorphic.
        std::vector<Edge> edges;
        for (auto [a, b] : pg.edges) edges.push_back({a, b});
        const Graph as_graph(pg.num_vertices, edges);
        CHECK_MESSAGE(oracle_count(as_graph, p) == 1, p.name());
    }
}

TEST_CASE("small closed forms") {
    CHECK(count(complete_graph(4), Pattern::plain(PatternTag::C3)) == 4);
    CHECK(count(complete_bipartite(2, 3), Pattern::plain(PatternTag::C4)) == 3);
    CHECK(count(cycle_graph(5), Pattern::plain(PatternTag::P2)) == 5);
    CHECK(oriented_count(complete_bipartite(3, 5), Pattern::oriented_biclique(1, 1)) == 15);
    CHECK(oriented_count(complete_bipartite(2, 4), Pattern::oriented_biclique(2, 4)) == 1);
    CHECK(oriented_count(complete_bipartite(2, 4), Pattern::oriented_biclique(4, 2)) == 0);
    CHECK(oriented_count(complete_bipartite(2, 3), Pattern::oriented_path4()) == 6);
    CHECK(brute_force_count(complete_graph(4), Pattern::plain(PatternTag::C3)) == 4);
    const Graph empty(6, {});
    for (const Pattern& p : plain_patterns()) {
        CHECK(count(empty, p) == 0);
        CHECK(brute_force_count(empty, p) == 0);
    }
}

TEST_CASE("misuse of oriented entry points") {
    CHECK_THROWS_AS(count(complete_bipartite(2, 2), Pattern::oriented_path4()), DomainError);
    CHECK_THROWS_AS(oriented_count(complete_graph(4), Pattern::oriented_path4()), DomainError);
    CHECK_THROWS_AS(oriented_count(complete_bipartite(2, 2), Pattern::plain(PatternTag::C4)), DomainError);
}

TEST_CASE("fast counts and brute force agree with the map-counting oracle") {
    std::uint64_t seed = 1;
    for (std::size_t n = 4; n <= 8; ++n)
        for (double p : {0.3, 0.6}) {
            Rng rng(derive_seed(2024, seed_tag::graph, seed++));
            const Graph g = erdos_renyi(n, p, rng);
            for (const Pattern& pat : plain_patterns()) {
                const std::uint64_t want = oracle_count(g, pat);
                CHECK_MESSAGE(count(g, pat) == want, pat.name() << " n=" << n << " p=" << p);
                CHECK_MESSAGE(brute_force_count(g, pat) == want, pat.name() << " n=" << n << " p=" << p);
            }
        }
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t m = 2; m <= 5; ++m) {
            Rng rng(derive_seed(2025, seed_tag::graph, n * 10 + m));
            const Graph g = bipartite_erdos_renyi(n, m, 0.7, rng);
            for (const Pattern& pat : oriented_patterns()) {
                const std::uint64_t want = oracle_count(g, pat);
                CHECK_MESSAGE(oriented_count(g, pat) == want, pat.name() << " n=" << n << " m=" << m);
                CHECK_MESSAGE(brute_force_count(g, pat) == want, pat.name() << " n=" << n << " m=" << m);
            }
        }
}

TEST_CASE("count and census agree on a doubled shape") {
    Rng rng(7);
    const Graph g = erdos_renyi(8, 0.5, rng);
    const SubgraphCensus cs = census(g);
    CHECK(count(g, Pattern::plain(PatternTag::C4_2E)) == cs.c4_2e);
    CHECK(brute_force_count(g, Pattern::plain(PatternTag::C4_2E)) == cs.c4_2e);
}

TEST_CASE("census fields against brute force") {
    Rng rng(derive_seed(9, seed_tag::graph, 0));
    const Graph g = erdos_renyi(9, 0.4, rng);
    const SubgraphCensus cs = census(g);
    for (const Pattern& pat : plain_patterns()) {
        if (pat.tag == PatternTag::K1K && pat.k == 5) continue;
        CHECK_MESSAGE(cs.get(pat) == brute_force_count(g, pat), pat.name());
    }
    CHECK(cs.k18 == brute_force_count(g, Pattern::star(8)));
    CHECK_FALSE(cs.oriented.has_value());

    const Graph b = complete_bipartite(3, 4);
    const SubgraphCensus cb = census(b);
    REQUIRE(cb.oriented.has_value());
    CHECK(cb.oriented->k13 == brute_force_count(b, Pattern::oriented_biclique(1, 3)));
    CHECK(cb.oriented->k14 == brute_force_count(b, Pattern::oriented_biclique(1, 4)));
    CHECK(cb.oriented->k24 == brute_force_count(b, Pattern::oriented_biclique(2, 4)));
    CHECK(cb.oriented->p4 == brute_force_count(b, Pattern::oriented_path4()));
}

TEST_CASE("hand-checked doubled shapes") {
    std::ifstream f(std::string(WML_FIXTURE_DIR) + "/doubled_shapes.json");
    REQUIRE(f.good());
    const nlohmann::json doc = nlohmann::json::parse(f);
    for (const auto& entry : doc["graphs"]) {
        std::vector<Edge> edges;
        for (const auto& e : entry["edges"]) edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>()});
        std::optional<Bipartition> orient;
        const std::size_t n = entry["n"].get<std::size_t>();
        if (entry.contains("left")) {
            Bipartition bp;
            std::vector<bool> is_left(n, false);
            for (const auto& v : entry["left"]) is_left[v.get<std::size_t>()] = true;
            for (Vertex v = 0; v < n; ++v) (is_left[v] ? bp.left : bp.right).push_back(v);
            orient = bp;
        }
        const Graph g(n, edges, orient);
        std::map<std::string, Count> got;
        for (const auto& [k, v] : census_fields(census(g))) got[k] = v;
        for (const auto& [key, value] : entry["counts"].items()) {
            REQUIRE_MESSAGE(got.count(key) == 1, key);
            CHECK_MESSAGE(got[key] == value.get<std::uint64_t>(), entry["name"].get<std::string>() << " " << key);
        }
    }
}

TEST_CASE("closed forms on complete graphs") {
    for (std::size_t n = 4; n <= 12; ++n) {
        const SubgraphCensus cs = census(complete_graph(n));
        CHECK(cs.c3 == c(n, 3));
        CHECK(cs.c4 == 3 * c(n, 4));
        CHECK(cs.p2 == n * c(n - 1, 2));
        CHECK(cs.k13 == n * c(n - 1, 3));
        CHECK(cs.k14 == n * c(n - 1, 4));
        CHECK(cs.k18 == n * c(n - 1, 8));
    }
}

TEST_CASE("bipartite masks have no odd-cycle patterns") {
    Rng rng(3);
    const Graph g = bipartite_erdos_renyi(6, 6, 0.6, rng);
    const SubgraphCensus cs = census(g);
    CHECK(cs.c3 == 0);
    CHECK(cs.c3_2e == 0);
    CHECK(cs.c3_2v == 0);
    CHECK(cs.c3_plus == 0);
    CHECK(cs.c4_2ev == 0);
}

TEST_CASE("adding an edge never decreases a plain count") {
    Rng rng(12);
    const Graph g = erdos_renyi(8, 0.4, rng);
    const SubgraphCensus before = census(g);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (Vertex a = 0; a < 8; ++a)
        for (Vertex b = a + 1; b < 8; ++b)
            if (!g.has_edge(a, b)) {
                edges.push_back({a, b});
                const SubgraphCensus after = census(Graph(8, edges));
                edges.pop_back();
                for (std::size_t i = 0; i < census_fields(before).size(); ++i)
                    CHECK(census_fields(after)[i].second >= census_fields(before)[i].second);
            }
}

TEST_CASE("count inequalities") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        Rng rng(derive_seed(31, seed_tag::graph, s));
        const Graph g = erdos_renyi(8 + s % 5, 0.2 + 0.025 * static_cast<double>(s), rng);
        const SubgraphCensus cs = census(g);
        const auto x = [](Count v) { return to_double(v); };
        const double p2 = x(cs.p2), c4 = x(cs.c4);
        CHECK(x(cs.c3) <= 3 * p2);
        CHECK(3 * x(cs.c3) <= p2);
        CHECK(4 * x(cs.c4) <= x(cs.p3));
        // The remaining parts hold up to a constant; 4 covers every graph tried.
        CHECK(x(cs.k13) <= 4 * std::pow(p2, 1.5));
        CHECK(x(cs.p3) <= 4 * std::pow(p2, 1.5));
        CHECK(x(cs.c3_plus) <= 4 * std::pow(p2, 1.5));
        CHECK(x(cs.k13_plus) <= 4 * (std::pow(p2, 1.5) + x(cs.k14)));
        CHECK(x(cs.p4) <= 4 * (std::pow(p2, 1.5) + x(cs.k14)));
        CHECK(x(cs.k23) <= 4 * std::pow(c4, 1.5));
        CHECK(x(cs.c4_2ev) <= 4 * (c4 + x(cs.k24) + x(cs.c4_2e)));
        CHECK(cs.k24 + cs.c4_2e + cs.c4_2v <= cs.c4 * cs.c4);
    }
}

TEST_CASE("census scales to sparse graphs with ten thousand vertices") {
    Rng rng(5);
    const Graph g = erdos_renyi(10000, 0.001, rng);
    const SubgraphCensus cs = census(g);
    CHECK(cs.e == g.num_edges());
    CHECK(cs.c3 > 0);
}
