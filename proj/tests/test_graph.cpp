#include "wml/errors.hpp"
#include "wml/graph.hpp"
#include "wml/statistics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace wml;

TEST_CASE("complete graph edge counts") {
    CHECK(complete_graph(0).num_vertices() == 0);
    CHECK(complete_graph(0).num_edges() == 0);
    CHECK(complete_graph(4).num_edges() == 6);
    CHECK(complete_graph(10).num_edges() == 45);
}

TEST_CASE("complete bipartite") {
    const Graph g = complete_bipartite(2, 4);
    CHECK(g.num_edges() == 8);
    REQUIRE(g.is_oriented());
    CHECK(g.orientation()->left.size() == 2);
    CHECK(g.orientation()->right.size() == 4);
    CHECK(complete_bipartite(0, 5).num_edges() == 0);
    CHECK(complete_bipartite(8, 8).num_edges() == 64);
}

TEST_CASE("constructor rejects malformed input") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), DomainError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), DomainError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), DomainError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}}, Bipartition{{0, 1}, {2}}), DomainError);
    CHECK_THROWS_AS(Graph(3, {{0, 2}}, Bipartition{{0}, {2}}), DomainError);
}

TEST_CASE("edge ids follow lexicographic order") {
    const Graph g(4, {{2, 3}, {1, 0}, {0, 2}});
    REQUIRE(g.num_edges() == 3);
    CHECK(g.edges()[0] == Edge{0, 1});
    CHECK(g.edges()[1] == Edge{0, 2});
    CHECK(g.edges()[2] == Edge{2, 3});
    CHECK(*g.edge_id(3, 2) == 2);
    CHECK_FALSE(g.edge_id(1, 3).has_value());
    for (Vertex v = 0; v < 4; ++v) {
        auto nb = g.neighbors(v);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        auto ids = g.incident_edges(v);
        for (std::size_t i = 0; i < nb.size(); ++i) CHECK(*g.edge_id(v, nb[i]) == ids[i]);
    }
}

TEST_CASE("erdos renyi extremes and edge-count mean") {
    Rng rng(1);
    CHECK(erdos_renyi(20, 0.0, rng).num_edges() == 0);
    const Graph full = erdos_renyi(12, 1.0, rng);
    const Graph k12 = complete_graph(12);
    CHECK(std::equal(full.edges().begin(), full.edges().end(), k12.edges().begin(), k12.edges().end()));
    CHECK_THROWS_AS(erdos_renyi(5, 1.5, rng), DomainError);
    CHECK_THROWS_AS(erdos_renyi(5, -0.1, rng), DomainError);

    RunningMoments m;
    for (std::uint64_t s = 0; s < 2000; ++s) {
        Rng r(derive_seed(99, seed_tag::graph, s));
        m.add(static_cast<double>(erdos_renyi(60, 0.3, r).num_edges()));
    }
    CHECK(std::abs(m.mean() - 531.0) < 4 * m.stderr_mean());
}

TEST_CASE("bipartite erdos renyi") {
    Rng rng(2);
    CHECK(bipartite_erdos_renyi(4, 5, 0.0, rng).num_edges() == 0);
    CHECK(bipartite_erdos_renyi(4, 5, 1.0, rng).num_edges() == 20);
    RunningMoments m;
    for (std::uint64_t s = 0; s < 2000; ++s) {
        Rng r(derive_seed(5, seed_tag::graph, s));
        m.add(static_cast<double>(bipartite_erdos_renyi(40, 10, 0.2, r).num_edges()));
    }
    CHECK(std::abs(m.mean() - 80.0) < 4 * m.stderr_mean());
}

TEST_CASE("generator is a fixed function of the seed") {
    Rng a(77), b(77);
    const Graph g1 = erdos_renyi(30, 0.4, a);
    const Graph g2 = erdos_renyi(30, 0.4, b);
    CHECK(std::equal(g1.edges().begin(), g1.edges().end(), g2.edges().begin(), g2.edges().end()));
}

TEST_CASE("degree and shared degree") {
    CHECK(degree(complete_graph(4), 2) == 3);
    CHECK(degree(Graph(3, {}), 1) == 0);
    const Graph k24 = complete_bipartite(2, 4);
    CHECK(degree(k24, 0) == 4);
    const Vertex left[] = {0, 1};
    CHECK(shared_degree(k24, left) == 4);
    const Vertex twice[] = {3, 3};
    CHECK(shared_degree(k24, twice) == degree(k24, 3));

    Rng rng(8);
    const Graph g = erdos_renyi(9, 0.5, rng);
    for (Vertex a = 0; a < 9; ++a)
        for (Vertex b = a + 1; b < 9; ++b)
            for (Vertex c = b + 1; c < 9; ++c) {
                std::size_t expect = 0;
                for (Vertex w = 0; w < 9; ++w)
                    if (g.has_edge(w, a) && g.has_edge(w, b) && g.has_edge(w, c)) ++expect;
                const Vertex vs[] = {a, b, c};
                CHECK(shared_degree(g, vs) == expect);
            }
}

TEST_CASE("max degree vertex breaks ties by label") {
    const MaxDegree k4 = max_degree_vertex(complete_graph(4));
    CHECK(k4.vertex == 0);
    CHECK(k4.degree == 3);
    const MaxDegree st = max_degree_vertex(star_graph(5));
    CHECK(st.vertex == 0);
    CHECK(st.degree == 5);
    const MaxDegree empty = max_degree_vertex(Graph(3, {}));
    CHECK(empty.vertex == 0);
    CHECK(empty.degree == 0);
}

TEST_CASE("graph spec parsing") {
    const GraphSpec s = parse_graph_spec("er:n=50,p=0.3,seed=4");
    CHECK(s.family == "er");
    CHECK(s.n == 50);
    CHECK(s.p == 0.3);
    CHECK(*s.seed == 4);
    CHECK(build_graph(parse_graph_spec("kbip:n=8,m=8"), 1).num_edges() == 64);
    CHECK(build_graph(parse_graph_spec("star:k=5"), 1).num_edges() == 5);
    CHECK(build_graph(parse_graph_spec("cycle:n=5"), 1).num_edges() == 5);

    try {
        parse_graph_spec("er:n=");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.token() == "n=");
    }
    CHECK_THROWS_AS(parse_graph_spec("blob:n=3"), ParseError);
    CHECK_THROWS_AS(parse_graph_spec("er:n=5,q=1"), ParseError);
}

TEST_CASE("json round trip keeps edges and orientation") {
    const Graph g = complete_bipartite(2, 3);
    const Graph h = graph_from_json(graph_to_json(g));
    CHECK(h.num_vertices() == 5);
    CHECK(std::equal(g.edges().begin(), g.edges().end(), h.edges().begin(), h.edges().end()));
    REQUIRE(h.is_oriented());
    CHECK(h.is_left(1));
    CHECK_FALSE(h.is_left(4));
}

TEST_CASE("relabel preserves structure") {
    const Graph g(4, {{0, 1}, {1, 2}});
    const Vertex perm[] = {3, 2, 1, 0};
    const Graph h = relabel(g, perm);
    CHECK(h.has_edge(3, 2));
    CHECK(h.has_edge(2, 1));
    CHECK_FALSE(h.has_edge(0, 1));
}
