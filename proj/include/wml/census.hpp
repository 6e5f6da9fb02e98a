#pragma once

#include "wml/count.hpp"
#include "wml/graph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wml {

enum class PatternTag {
    E,
    P2,
    P3,
    P4,
    C3,
    C4,
    C3_PLUS,   // paw: triangle with a pendant edge
    K13_PLUS,  // chair: K_{1,3} with one leaf extended by an edge
    C3_2E,     // diamond: two triangles sharing an edge
    C3_2V,     // bowtie: two triangles sharing a vertex
    C4_2E,     // domino: two 4-cycles sharing exactly one edge
    C4_2V,     // two 4-cycles sharing exactly one vertex
    C4_2EV,    // two 4-cycles on a common pair, adjacent in one and opposite in the other
    K23,
    K24,
    K1K,
    OK,   // oriented K_{r,s}: r vertices on the left side, s on the right
    OP4,  // oriented 4-path: interior pair on the left, ends and middle on the right
};

struct Pattern {
    PatternTag tag = PatternTag::E;
    unsigned k = 0;  // K1K
    unsigned r = 0;  // OK
    unsigned s = 0;  // OK

    static Pattern plain(PatternTag t);
    static Pattern star(unsigned k);
    static Pattern oriented_biclique(unsigned r, unsigned s);
    static Pattern oriented_path4();

    bool is_oriented() const noexcept { return tag == PatternTag::OK || tag == PatternTag::OP4; }
    std::string name() const;
};

// Vertex count, edge list and (for oriented patterns) side of every vertex.
struct PatternGraph {
    std::size_t num_vertices = 0;
    std::vector<std::pair<unsigned, unsigned>> edges;
    std::vector<bool> left;  // empty for plain patterns
};
PatternGraph pattern_graph(const Pattern& pat);

// Number of non-induced copies of pat in g. Throws DomainError for oriented patterns.
Count count(const Graph& g, const Pattern& pat);
// Copies respecting g's orientation. Throws DomainError if g has none or pat is plain.
Count oriented_count(const Graph& g, const Pattern& pat);
// Exhaustive oracle: injective backtracking embedding, deduplicated by edge set.
Count brute_force_count(const Graph& g, const Pattern& pat);

struct OrientedCensus {
    Count k13 = 0;
    Count k14 = 0;
    Count k24 = 0;
    Count p4 = 0;
};

struct SubgraphCensus {
    Count c3 = 0;
    Count c4 = 0;
    Count p2 = 0;
    Count e = 0;
    Count k13 = 0;
    Count k14 = 0;
    Count k18 = 0;
    Count k24 = 0;
    Count c3_2e = 0;
    Count c3_2v = 0;
    Count c4_2e = 0;
    Count c4_2v = 0;
    // Consumed by the variance bounds.
    Count p3 = 0;
    Count p4 = 0;
    Count c3_plus = 0;
    Count k13_plus = 0;
    Count c4_2ev = 0;
    Count k23 = 0;
    std::optional<OrientedCensus> oriented;

    // Field for a plain pattern (K1K only for k in {1, 2, 3, 4, 8}).
    Count get(const Pattern& pat) const;
};

SubgraphCensus census(const Graph& g);

// Flat list of (snake_case key, value); oriented keys only when present.
std::vector<std::pair<std::string, Count>> census_fields(const SubgraphCensus& c);

} // namespace wml
