#pragma once

#include "wml/random.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wml {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u;
    Vertex v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Left/right sides of a bipartite mask. Oriented counts are relative to it.
struct Bipartition {
    std::vector<Vertex> left;
    std::vector<Vertex> right;
};

// Immutable simple undirected graph on vertices 0..n-1.
//
// Edges are normalized to u < v and kept in lexicographic order; an edge's
// position in that order is its edge id, which indexes MaskedMatrix values.
// Neighbor lists are sorted and stored in CSR form alongside the id of the
// edge each adjacency entry belongs to.
class Graph {
public:
    Graph() = default;
    // Throws DomainError on self-loops, duplicate edges, labels >= n, or an
    // orientation that is not a partition crossed by every edge.
    Graph(std::size_t n, std::vector<Edge> edges, std::optional<Bipartition> orientation = {});

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const;
    // Edge ids aligned with neighbors(v).
    std::span<const std::uint32_t> incident_edges(Vertex v) const;
    std::size_t degree(Vertex v) const;

    bool has_edge(Vertex a, Vertex b) const;
    std::optional<std::uint32_t> edge_id(Vertex a, Vertex b) const;

    const std::optional<Bipartition>& orientation() const noexcept { return orientation_; }
    bool is_oriented() const noexcept { return orientation_.has_value(); }
    // Requires an orientation.
    bool is_left(Vertex v) const;

private:
    void check_vertex(Vertex v) const;

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
    std::vector<std::uint32_t> adj_edge_;
    std::optional<Bipartition> orientation_;
    std::vector<std::uint8_t> side_;  // 1 = left
};

using GraphPtr = std::shared_ptr<const Graph>;

Graph complete_graph(std::size_t n);
// Left = {0..n-1}, right = {n..n+m-1}; orientation recorded.
Graph complete_bipartite(std::size_t n, std::size_t m);
// One uniform01 draw per pair (i, j), i < j, in lexicographic order; the pair
// is kept iff the draw is < p.
Graph erdos_renyi(std::size_t n, double p, Rng& rng);
// Pairs (i, n + j) visited for i in 0..n-1, j in 0..m-1, one draw each.
Graph bipartite_erdos_renyi(std::size_t n, std::size_t m, double p, Rng& rng);
Graph star_graph(std::size_t leaves);
Graph cycle_graph(std::size_t n);

std::size_t degree(const Graph& g, Vertex v);
// Common neighbors of the distinct vertices in vs (duplicates collapse).
std::size_t shared_degree(const Graph& g, std::span<const Vertex> vs);

struct MaxDegree {
    Vertex vertex;
    std::size_t degree;
};
// Smallest label among the vertices of maximal degree. Throws on n = 0.
MaxDegree max_degree_vertex(const Graph& g);

// Graph with vertex v relabeled to perm[v]. Orientation carried along.
Graph relabel(const Graph& g, std::span<const Vertex> perm);

// Graph spec mini-language: complete:n=10, kbip:n=8,m=8, er:n=50,p=0.3,
// biper:n=40,m=10,p=0.2, star:k=5, cycle:n=5. Random families accept an
// optional seed=<u64>; otherwise default_seed is used. Throws ParseError
// naming the offending token.
struct GraphSpec {
    std::string family;
    std::size_t n = 0;
    std::size_t m = 0;
    double p = 1.0;
    std::optional<std::uint64_t> seed;
};
GraphSpec parse_graph_spec(std::string_view text);
Graph build_graph(const GraphSpec& spec, std::uint64_t default_seed);

// {"n": .., "edges": [[u, v], ...], "left": [...]?}
std::string graph_to_json(const Graph& g);
Graph graph_from_json(std::string_view text);

} // namespace wml
