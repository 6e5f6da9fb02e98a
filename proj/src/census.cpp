#include "wml/census.hpp"

#include "wml/errors.hpp"

#include <algorithm>

namespace wml {

Pattern Pattern::plain(PatternTag t) {
    if (t == PatternTag::OK || t == PatternTag::OP4) throw DomainError("plain() given an oriented tag");
    if (t == PatternTag::K1K) throw DomainError("use Pattern::star for K_{1,k}");
    Pattern p;
    p.tag = t;
    return p;
}

Pattern Pattern::star(unsigned k) {
    if (k < 1) throw DomainError("K_{1,k} requires k >= 1");
    Pattern p;
    p.tag = PatternTag::K1K;
    p.k = k;
    return p;
}

Pattern Pattern::oriented_biclique(unsigned r, unsigned s) {
    if (r < 1 || s < 1) throw DomainError("oriented K_{r,s} requires r, s >= 1");
    Pattern p;
    p.tag = PatternTag::OK;
    p.r = r;
    p.s = s;
    return p;
}

Pattern Pattern::oriented_path4() {
    Pattern p;
    p.tag = PatternTag::OP4;
    return p;
}

std::string Pattern::name() const {
    switch (tag) {
    case PatternTag::E: return "E";
    case PatternTag::P2: return "P2";
    case PatternTag::P3: return "P3";
    case PatternTag::P4: return "P4";
    case PatternTag::C3: return "C3";
    case PatternTag::C4: return "C4";
    case PatternTag::C3_PLUS: return "C3_PLUS";
    case PatternTag::K13_PLUS: return "K13_PLUS";
    case PatternTag::C3_2E: return "C3_2E";
    case PatternTag::C3_2V: return "C3_2V";
    case PatternTag::C4_2E: return "C4_2E";
    case PatternTag::C4_2V: return "C4_2V";
    case PatternTag::C4_2EV: return "C4_2EV";
    case PatternTag::K23: return "K23";
    case PatternTag::K24: return "K24";
    case PatternTag::K1K: return "K1" + std::to_string(k);
    case PatternTag::OK: return "OK" + std::to_string(r) + std::to_string(s);
    case PatternTag::OP4: return "OP4";
    }
    return "?";
}

PatternGraph pattern_graph(const Pattern& pat) {
    PatternGraph pg;
    auto cycle = [&](std::initializer_list<unsigned> vs) {
        const std::vector<unsigned> v(vs);
        for (std::size_t i = 0; i < v.size(); ++i) pg.edges.emplace_back(v[i], v[(i + 1) % v.size()]);
    };
    auto path = [&](std::initializer_list<unsigned> vs) {
        const std::vector<unsigned> v(vs);
        for (std::size_t i = 0; i + 1 < v.size(); ++i) pg.edges.emplace_back(v[i], v[i + 1]);
    };
    auto biclique = [&](unsigned r, unsigned s) {
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = 0; j < s; ++j) pg.edges.emplace_back(i, r + j);
        pg.num_vertices = r + s;
    };
    switch (pat.tag) {
    case PatternTag::E: pg.num_vertices = 2; path({0, 1}); break;
    case PatternTag::P2: pg.num_vertices = 3; path({0, 1, 2}); break;
    case PatternTag::P3: pg.num_vertices = 4; path({0, 1, 2, 3}); break;
    case PatternTag::P4: pg.num_vertices = 5; path({0, 1, 2, 3, 4}); break;
    case PatternTag::C3: pg.num_vertices = 3; cycle({0, 1, 2}); break;
    case PatternTag::C4: pg.num_vertices = 4; cycle({0, 1, 2, 3}); break;
    case PatternTag::C3_PLUS:
        pg.num_vertices = 4;
        cycle({0, 1, 2});
        path({0, 3});
        break;
    case PatternTag::K13_PLUS:
        pg.num_vertices = 5;
        path({1, 0, 2});
        path({0, 3, 4});
        break;
    case PatternTag::C3_2E:
        pg.num_vertices = 4;
        cycle({0, 1, 2});
        path({1, 3, 2});
        break;
    case PatternTag::C3_2V:
        pg.num_vertices = 5;
        cycle({0, 1, 2});
        cycle({0, 3, 4});
        break;
    case PatternTag::C4_2E:
        pg.num_vertices = 6;
        cycle({0, 1, 2, 3});
        path({2, 4, 5, 3});
        break;
    case PatternTag::C4_2V:
        pg.num_vertices = 7;
        cycle({0, 1, 2, 3});
        cycle({0, 4, 5, 6});
        break;
    case PatternTag::C4_2EV:
        pg.num_vertices = 6;
        cycle({0, 1, 2, 3});
        cycle({0, 4, 1, 5});
        break;
    case PatternTag::K23: biclique(2, 3); break;
    case PatternTag::K24: biclique(2, 4); break;
    case PatternTag::K1K: biclique(1, pat.k); break;
    case PatternTag::OK:
        biclique(pat.r, pat.s);
        pg.left.assign(pg.num_vertices, false);
        for (unsigned i = 0; i < pat.r; ++i) pg.left[i] = true;
        break;
    case PatternTag::OP4:
        pg.num_vertices = 5;
        path({0, 1, 2, 3, 4});
        pg.left = {false, true, false, true, false};
        break;
    }
    return pg;
}

namespace {

inline Count c2(std::uint64_t x) { return x < 2 ? 0 : static_cast<Count>(x) * (x - 1) / 2; }

Count star_sum(const Graph& g, unsigned k) {
    if (k == 1) return g.num_edges();
    Count total = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) total = checked_add(total, binomial(g.degree(v), k));
    return total;
}

// Triangle data: t[e] = triangles on edge e.
struct TriangleStats {
    std::vector<std::uint64_t> t;
    Count c3 = 0;
    Count paw = 0;
    Count diamond = 0;
    Count bowtie = 0;
    Count k4 = 0;
    // Per edge, over common neighbors w: sum (t(uw) + t(vw) - 2), sum (t(uw)-1)(t(vw)-1),
    // and the number of edges inside the common neighborhood.
    std::vector<Count> cn_sum;
    std::vector<Count> cn_cross;
    std::vector<std::uint64_t> cn_edges;
    // Sum over triangles of C(t_a + t_b + t_c - 3, 2).
    Count triple_term = 0;
};

struct Common {
    Vertex w;
    std::uint32_t eu;
    std::uint32_t ev;
};

void common_neighbors(const Graph& g, Vertex u, Vertex v, std::vector<Common>& out) {
    out.clear();
    const auto nu = g.neighbors(u), nv = g.neighbors(v);
    const auto iu = g.incident_edges(u), iv = g.incident_edges(v);
    std::size_t a = 0, b = 0;
    while (a < nu.size() && b < nv.size()) {
        if (nu[a] < nv[b]) {
            ++a;
        } else if (nv[b] < nu[a]) {
            ++b;
        } else {
            out.push_back({nu[a], iu[a], iv[b]});
            ++a;
            ++b;
        }
    }
}

std::size_t sorted_intersection_size(std::span<const Vertex> a, const std::vector<Common>& b) {
    std::size_t i = 0, j = 0, n = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j].w) {
            ++i;
        } else if (b[j].w < a[i]) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

TriangleStats triangle_stats(const Graph& g, bool full) {
    TriangleStats ts;
    const auto m = g.num_edges();
    ts.t.assign(m, 0);
    std::vector<Common> cn;
    const auto edges = g.edges();
    for (std::uint32_t e = 0; e < m; ++e) {
        common_neighbors(g, edges[e].u, edges[e].v, cn);
        ts.t[e] = cn.size();
    }
    if (full) {
        ts.cn_sum.assign(m, 0);
        ts.cn_cross.assign(m, 0);
        ts.cn_edges.assign(m, 0);
    }
    std::vector<Count> per_vertex(g.num_vertices(), 0);
    for (std::uint32_t e = 0; e < m; ++e) {
        const Vertex u = edges[e].u, v = edges[e].v;
        const std::uint64_t te = ts.t[e];
        if (te == 0) continue;
        ts.diamond = checked_add(ts.diamond, c2(te));
        common_neighbors(g, u, v, cn);
        std::uint64_t inside = 0;
        for (const Common& c : cn) {
            const auto tu = ts.t[c.eu], tv = ts.t[c.ev];
            if (full) {
                ts.cn_sum[e] = checked_add(ts.cn_sum[e], tu + tv - 2);
                ts.cn_cross[e] = checked_add(ts.cn_cross[e], static_cast<Count>(tu - 1) * (tv - 1));
                inside += sorted_intersection_size(g.neighbors(c.w), cn);
            }
            if (c.w > v) {
                ts.c3 = checked_add(ts.c3, 1);
                const std::uint64_t degsum = g.degree(u) + g.degree(v) + g.degree(c.w);
                ts.paw = checked_add(ts.paw, degsum - 6);
                ts.triple_term = checked_add(ts.triple_term, c2(te + tu + tv - 3));
                for (Vertex x : {u, v, c.w}) per_vertex[x] = checked_add(per_vertex[x], 1);
            }
        }
        if (full) {
            ts.cn_edges[e] = inside / 2;
            ts.k4 = checked_add(ts.k4, inside / 2);
        }
    }
    if (full) ts.k4 /= 6;
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        Count at_edges = 0;
        for (std::uint32_t e : g.incident_edges(x)) at_edges = checked_add(at_edges, c2(ts.t[e]));
        const Count tv = per_vertex[x];
        const Count pairs = tv < 2 ? 0 : checked_mul(tv, tv - 1) / 2;
        ts.bowtie = checked_add(ts.bowtie, checked_sub(pairs, at_edges));
    }
    return ts;
}

// Everything derived from codegree rows: C4, K23, K24, and the three doubled-C4 shapes.
struct FourCycleStats {
    Count c4 = 0;
    Count k23 = 0;
    Count k24 = 0;
    Count domino = 0;
    Count c4_2v = 0;
    Count c4_2ev = 0;
};

FourCycleStats four_cycle_stats(const Graph& g, const TriangleStats& ts) {
    FourCycleStats out;
    const std::size_t n = g.num_vertices(), m = g.num_edges();
    std::vector<std::uint64_t> cnt(n, 0);
    std::vector<Vertex> touched;
    std::vector<std::uint8_t> adjacent(n, 0);
    // cycles through each edge, and sum over the far side of C(codeg - 1, 2) per direction
    std::vector<std::uint64_t> through(m, 0);
    std::vector<Count> far_pairs(2 * m, 0);

    Count c4_twice = 0;
    Count s1 = 0, s2 = 0, s3 = 0;
    for (Vertex u = 0; u < n; ++u) {
        touched.clear();
        for (Vertex w : g.neighbors(u)) {
            adjacent[w] = 1;
            for (Vertex z : g.neighbors(w)) {
                if (z == u) continue;
                if (cnt[z]++ == 0) touched.push_back(z);
            }
        }
        Count q_u = 0;
        for (Vertex z : touched) {
            const std::uint64_t c = cnt[z];
            const Count pairs = c2(c);
            q_u = checked_add(q_u, pairs);
            if (z > u) {
                c4_twice = checked_add(c4_twice, pairs);
                out.k23 = checked_add(out.k23, binomial(c, 3));
                out.k24 = checked_add(out.k24, binomial(c, 4));
                if (!adjacent[z]) {
                    s2 = checked_add(s2, pairs < 2 ? 0 : checked_mul(pairs, pairs - 1) / 2);
                    s3 = checked_add(s3, checked_mul(c, c2(c - 1)));
                }
            }
        }
        s1 = checked_add(s1, q_u < 2 ? 0 : checked_mul(q_u, q_u - 1) / 2);

        const auto nu = g.neighbors(u);
        const auto iu = g.incident_edges(u);
        for (std::size_t i = 0; i < nu.size(); ++i) {
            const Vertex v = nu[i];
            const std::uint32_t e = iu[i];
            std::uint64_t cycles = 0;
            Count far = 0;
            for (Vertex w : g.neighbors(v)) {
                if (w == u) continue;
                const std::uint64_t a = cnt[w] - 1;
                cycles += a;
                far = checked_add(far, c2(a));
            }
            through[e] = cycles;
            far_pairs[2 * e + (u < v ? 0 : 1)] = far;
        }

        for (Vertex w : nu) adjacent[w] = 0;
        for (Vertex z : touched) cnt[z] = 0;
    }
    out.c4 = c4_twice / 2;

    for (std::uint32_t e = 0; e < m; ++e) {
        const Count ne = through[e];
        const std::uint64_t te = ts.t[e];
        const std::uint64_t inside = ts.cn_edges[e];

        const Count overlap = checked_add(checked_add(far_pairs[2 * e], far_pairs[2 * e + 1]), ts.cn_cross[e]);
        const Count pairs = ne < 2 ? 0 : checked_mul(ne, ne - 1) / 2;
        out.domino = checked_add(out.domino, checked_sub(checked_add(pairs, inside), overlap));

        if (te >= 2) {
            const Count plus = checked_add(checked_mul(ne, c2(te)), 2 * static_cast<Count>(inside));
            const Count minus = checked_mul(te - 1, ts.cn_sum[e]);
            out.c4_2ev = checked_add(out.c4_2ev, checked_sub(plus, minus));
        }

        const Count q = checked_add(ne, c2(te));
        s2 = checked_add(s2, q < 2 ? 0 : checked_mul(q, q - 1) / 2);
    }
    s3 = checked_add(s3, ts.triple_term);
    const Count s4 = checked_mul(3, ts.k4);
    // Pairs of distinct 4-cycles sharing exactly one vertex, by inclusion-exclusion
    // over the number of shared vertices.
    out.c4_2v = checked_sub(checked_add(s1, checked_mul(3, s3)), checked_add(checked_mul(2, s2), checked_mul(4, s4)));
    return out;
}

Count path3(const Graph& g, const TriangleStats& ts) {
    Count total = 0;
    for (const Edge& e : g.edges())
        total = checked_add(total, static_cast<Count>(g.degree(e.u) - 1) * (g.degree(e.v) - 1));
    return checked_sub(total, checked_mul(3, ts.c3));
}

// Sum over centers c of sum_{b<d in N(c)} (deg b - 1)(deg d - 1).
Count wedge_degree_products(const Graph& g, Vertex c) {
    Count s = 0, q = 0;
    for (Vertex b : g.neighbors(c)) {
        const Count x = g.degree(b) - 1;
        s = checked_add(s, x);
        q = checked_add(q, checked_mul(x, x));
    }
    return checked_sub(checked_mul(s, s), q) / 2;
}

Count path4(const Graph& g, const TriangleStats& ts, Count c4) {
    Count total = 0;
    for (Vertex c = 0; c < g.num_vertices(); ++c) total = checked_add(total, wedge_degree_products(g, c));
    // Triangles: -(2(dx+dy+dz) - 9) each.
    Count tri = 0;
    const auto edges = g.edges();
    std::vector<Common> cn;
    for (std::uint32_t e = 0; e < g.num_edges(); ++e) {
        if (ts.t[e] == 0) continue;
        common_neighbors(g, edges[e].u, edges[e].v, cn);
        for (const Common& c : cn)
            if (c.w > edges[e].v)
                tri = checked_add(tri, 2 * (g.degree(edges[e].u) + g.degree(edges[e].v) + g.degree(c.w)) - 9);
    }
    return checked_sub(total, checked_add(tri, checked_mul(4, c4)));
}

Count chair(const Graph& g, const TriangleStats& ts) {
    Count total = 0;
    for (Vertex c = 0; c < g.num_vertices(); ++c) {
        const std::uint64_t dc = g.degree(c);
        if (dc < 3) continue;
        const Count leaves = c2(dc - 1);
        const auto nc = g.neighbors(c);
        const auto ic = g.incident_edges(c);
        for (std::size_t i = 0; i < nc.size(); ++i) {
            const Count plus = checked_mul(leaves, g.degree(nc[i]) - 1);
            const Count minus = checked_mul(ts.t[ic[i]], dc - 2);
            total = checked_add(total, checked_sub(plus, minus));
        }
    }
    return total;
}

void require_orientation(const Graph& g) {
    if (!g.is_oriented()) throw DomainError("oriented count requires a graph orientation");
}

// Sum over left pairs a < b of C(codeg(a, b), s).
Count left_pair_sum(const Graph& g, unsigned s) {
    const std::size_t n = g.num_vertices();
    std::vector<std::uint64_t> cnt(n, 0);
    std::vector<Vertex> touched;
    Count total = 0;
    for (Vertex a : g.orientation()->left) {
        touched.clear();
        for (Vertex w : g.neighbors(a))
            for (Vertex z : g.neighbors(w))
                if (z > a && cnt[z]++ == 0) touched.push_back(z);
        for (Vertex z : touched) {
            total = checked_add(total, binomial(cnt[z], s));
            cnt[z] = 0;
        }
    }
    return total;
}

// Sum over t-subsets S of `side` of C(|common neighborhood of S|, other).
Count subset_common_sum(const Graph& g, const std::vector<Vertex>& side, unsigned t, unsigned other) {
    const std::size_t n = g.num_vertices();
    std::vector<std::uint8_t> in_side(n, 0);
    for (Vertex v : side) in_side[v] = 1;
    Count total = 0;
    std::vector<std::vector<Vertex>> common(t);
    std::vector<std::uint8_t> mark(n, 0);

    auto recurse = [&](auto&& self, std::size_t depth, Vertex last) -> void {
        const auto& cn = common[depth - 1];
        if (cn.size() < other) return;
        if (depth == t) {
            total = checked_add(total, binomial(cn.size(), other));
            return;
        }
        // Candidates are same-side vertices sharing at least one common neighbor.
        std::vector<Vertex> cand;
        for (Vertex w : cn)
            for (Vertex z : g.neighbors(w))
                if (z > last && in_side[z] && !mark[z]) {
                    mark[z] = 1;
                    cand.push_back(z);
                }
        for (Vertex z : cand) mark[z] = 0;
        std::sort(cand.begin(), cand.end());
        for (Vertex z : cand) {
            const auto nz = g.neighbors(z);
            auto& next = common[depth];
            next.clear();
            std::set_intersection(cn.begin(), cn.end(), nz.begin(), nz.end(), std::back_inserter(next));
            self(self, depth + 1, z);
        }
    };
    for (Vertex a : side) {
        const auto na = g.neighbors(a);
        common[0].assign(na.begin(), na.end());
        recurse(recurse, 1, a);
    }
    return total;
}

Count oriented_biclique_count(const Graph& g, unsigned r, unsigned s) {
    const auto& sides = *g.orientation();
    if (r == 1) {
        Count total = 0;
        for (Vertex v : sides.left) total = checked_add(total, binomial(g.degree(v), s));
        return total;
    }
    if (s == 1) {
        Count total = 0;
        for (Vertex v : sides.right) total = checked_add(total, binomial(g.degree(v), r));
        return total;
    }
    if (r == 2) return left_pair_sum(g, s);
    if (r <= s) return subset_common_sum(g, sides.left, r, s);
    return subset_common_sum(g, sides.right, s, r);
}

Count oriented_path4_count(const Graph& g) {
    Count total = 0;
    for (Vertex c : g.orientation()->right) total = checked_add(total, wedge_degree_products(g, c));
    return checked_sub(total, checked_mul(2, left_pair_sum(g, 2)));
}

} // namespace

Count count(const Graph& g, const Pattern& pat) {
    if (pat.is_oriented()) throw DomainError("count() given an oriented pattern; use oriented_count");
    switch (pat.tag) {
    case PatternTag::E: return g.num_edges();
    case PatternTag::P2: return star_sum(g, 2);
    case PatternTag::K1K: return star_sum(g, pat.k);
    default: break;
    }
    const bool needs_cycles = pat.tag == PatternTag::C4 || pat.tag == PatternTag::K23 || pat.tag == PatternTag::K24 ||
                              pat.tag == PatternTag::C4_2E || pat.tag == PatternTag::C4_2V ||
                              pat.tag == PatternTag::C4_2EV || pat.tag == PatternTag::P4;
    const bool full = pat.tag == PatternTag::C4_2E || pat.tag == PatternTag::C4_2V || pat.tag == PatternTag::C4_2EV;
    const TriangleStats ts = triangle_stats(g, full);
    switch (pat.tag) {
    case PatternTag::C3: return ts.c3;
    case PatternTag::C3_PLUS: return ts.paw;
    case PatternTag::C3_2E: return ts.diamond;
    case PatternTag::C3_2V: return ts.bowtie;
    case PatternTag::P3: return path3(g, ts);
    case PatternTag::K13_PLUS: return chair(g, ts);
    default: break;
    }
    if (!needs_cycles) throw DomainError("unhandled pattern " + pat.name());
    if (!full) {
        // C4, K23, K24, P4 only need the codegree sums.
        const std::size_t n = g.num_vertices();
        std::vector<std::uint64_t> cnt(n, 0);
        std::vector<Vertex> touched;
        Count c4_twice = 0, k23 = 0, k24 = 0;
        for (Vertex u = 0; u < n; ++u) {
            touched.clear();
            for (Vertex w : g.neighbors(u))
                for (Vertex z : g.neighbors(w))
                    if (z > u && cnt[z]++ == 0) touched.push_back(z);
            for (Vertex z : touched) {
                c4_twice = checked_add(c4_twice, c2(cnt[z]));
                k23 = checked_add(k23, binomial(cnt[z], 3));
                k24 = checked_add(k24, binomial(cnt[z], 4));
                cnt[z] = 0;
            }
        }
        switch (pat.tag) {
        case PatternTag::C4: return c4_twice / 2;
        case PatternTag::K23: return k23;
        case PatternTag::K24: return k24;
        default: return path4(g, ts, c4_twice / 2);
        }
    }
    const FourCycleStats fs = four_cycle_stats(g, ts);
    switch (pat.tag) {
    case PatternTag::C4_2E: return fs.domino;
    case PatternTag::C4_2V: return fs.c4_2v;
    default: return fs.c4_2ev;
    }
}

Count oriented_count(const Graph& g, const Pattern& pat) {
    if (!pat.is_oriented()) throw DomainError("oriented_count() given a plain pattern");
    require_orientation(g);
    if (pat.tag == PatternTag::OK) return oriented_biclique_count(g, pat.r, pat.s);
    return oriented_path4_count(g);
}

Count brute_force_count(const Graph& g, const Pattern& pat) {
    const PatternGraph pg = pattern_graph(pat);
    const bool oriented = !pg.left.empty();
    if (oriented) require_orientation(g);
    const std::size_t k = pg.num_vertices;
    if (k > g.num_vertices()) return 0;

    // Breadth-first order so each vertex after the first has an earlier neighbor.
    std::vector<std::vector<unsigned>> padj(k);
    for (auto [a, b] : pg.edges) {
        padj[a].push_back(b);
        padj[b].push_back(a);
    }
    std::vector<unsigned> order{0};
    std::vector<int> pos(k, -1);
    pos[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (unsigned b : padj[order[i]])
            if (pos[b] < 0) {
                pos[b] = static_cast<int>(order.size());
                order.push_back(b);
            }
    if (order.size() != k) throw DomainError("pattern is disconnected");
    std::vector<std::vector<unsigned>> back(k);  // earlier neighbors, by position
    for (std::size_t i = 0; i < k; ++i)
        for (unsigned b : padj[order[i]])
            if (pos[b] < static_cast<int>(i)) back[i].push_back(static_cast<unsigned>(pos[b]));

    const bool small = g.num_edges() <= 128;
    std::vector<Count> keys;
    std::vector<std::vector<std::uint32_t>> big_keys;
    std::vector<Vertex> assign(k);
    std::vector<std::uint8_t> used(g.num_vertices(), 0);

    auto side_ok = [&](std::size_t i, Vertex v) {
        return !oriented || g.is_left(v) == pg.left[order[i]];
    };
    auto emit = [&] {
        std::vector<std::uint32_t> ids;
        ids.reserve(pg.edges.size());
        for (auto [a, b] : pg.edges) ids.push_back(*g.edge_id(assign[pos[a]], assign[pos[b]]));
        if (small) {
            Count key = 0;
            for (auto id : ids) key |= static_cast<Count>(1) << id;
            keys.push_back(key);
        } else {
            std::sort(ids.begin(), ids.end());
            big_keys.push_back(std::move(ids));
        }
    };
    auto extend = [&](auto&& self, std::size_t i) -> void {
        if (i == k) {
            emit();
            return;
        }
        const Vertex anchor = assign[back[i][0]];
        for (Vertex v : g.neighbors(anchor)) {
            if (used[v] || !side_ok(i, v)) continue;
            bool ok = true;
            for (std::size_t j = 1; j < back[i].size() && ok; ++j) ok = g.has_edge(v, assign[back[i][j]]);
            if (!ok) continue;
            used[v] = 1;
            assign[i] = v;
            self(self, i + 1);
            used[v] = 0;
        }
    };
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (!side_ok(0, v)) continue;
        used[v] = 1;
        assign[0] = v;
        extend(extend, 1);
        used[v] = 0;
    }
    if (small) {
        std::sort(keys.begin(), keys.end());
        return static_cast<Count>(std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    std::sort(big_keys.begin(), big_keys.end());
    return static_cast<Count>(std::unique(big_keys.begin(), big_keys.end()) - big_keys.begin());
}

Count SubgraphCensus::get(const Pattern& pat) const {
    switch (pat.tag) {
    case PatternTag::E: return e;
    case PatternTag::P2: return p2;
    case PatternTag::P3: return p3;
    case PatternTag::P4: return p4;
    case PatternTag::C3: return c3;
    case PatternTag::C4: return c4;
    case PatternTag::C3_PLUS: return c3_plus;
    case PatternTag::K13_PLUS: return k13_plus;
    case PatternTag::C3_2E: return c3_2e;
    case PatternTag::C3_2V: return c3_2v;
    case PatternTag::C4_2E: return c4_2e;
    case PatternTag::C4_2V: return c4_2v;
    case PatternTag::C4_2EV: return c4_2ev;
    case PatternTag::K23: return k23;
    case PatternTag::K24: return k24;
    case PatternTag::K1K:
        switch (pat.k) {
        case 1: return e;
        case 2: return p2;
        case 3: return k13;
        case 4: return k14;
        case 8: return k18;
        default: break;
        }
        break;
    case PatternTag::OK:
        if (oriented) {
            if (pat.r == 1 && pat.s == 3) return oriented->k13;
            if (pat.r == 1 && pat.s == 4) return oriented->k14;
            if (pat.r == 2 && pat.s == 4) return oriented->k24;
        }
        break;
    case PatternTag::OP4:
        if (oriented) return oriented->p4;
        break;
    }
    throw DomainError("census does not hold " + pat.name());
}

SubgraphCensus census(const Graph& g) {
    SubgraphCensus c;
    c.e = g.num_edges();
    c.p2 = star_sum(g, 2);
    c.k13 = star_sum(g, 3);
    c.k14 = star_sum(g, 4);
    c.k18 = star_sum(g, 8);
    const TriangleStats ts = triangle_stats(g, true);
    c.c3 = ts.c3;
    c.c3_plus = ts.paw;
    c.c3_2e = ts.diamond;
    c.c3_2v = ts.bowtie;
    c.p3 = path3(g, ts);
    c.k13_plus = chair(g, ts);
    const FourCycleStats fs = four_cycle_stats(g, ts);
    c.c4 = fs.c4;
    c.k23 = fs.k23;
    c.k24 = fs.k24;
    c.c4_2e = fs.domino;
    c.c4_2v = fs.c4_2v;
    c.c4_2ev = fs.c4_2ev;
    c.p4 = path4(g, ts, fs.c4);
    if (g.is_oriented()) {
        OrientedCensus o;
        o.k13 = oriented_biclique_count(g, 1, 3);
        o.k14 = oriented_biclique_count(g, 1, 4);
        o.k24 = oriented_biclique_count(g, 2, 4);
        o.p4 = oriented_path4_count(g);
        c.oriented = o;
    }
    return c;
}

std::vector<std::pair<std::string, Count>> census_fields(const SubgraphCensus& c) {
    std::vector<std::pair<std::string, Count>> f = {
        {"num_c3", c.c3},       {"num_c4", c.c4},         {"num_p2", c.p2},       {"num_e", c.e},
        {"num_k13", c.k13},     {"num_k14", c.k14},       {"num_k18", c.k18},     {"num_k24", c.k24},
        {"num_c3_2e", c.c3_2e}, {"num_c3_2v", c.c3_2v},   {"num_c4_2e", c.c4_2e}, {"num_c4_2v", c.c4_2v},
        {"num_p3", c.p3},       {"num_p4", c.p4},         {"num_c3_plus", c.c3_plus},
        {"num_k13_plus", c.k13_plus}, {"num_c4_2ev", c.c4_2ev}, {"num_k23", c.k23},
    };
    if (c.oriented) {
        f.emplace_back("onum_k13", c.oriented->k13);
        f.emplace_back("onum_k14", c.oriented->k14);
        f.emplace_back("onum_k24", c.oriented->k24);
        f.emplace_back("onum_p4", c.oriented->p4);
    }
    return f;
}

} // namespace wml
