#include "wml/statistics.hpp"

#include "wml/errors.hpp"

#include <algorithm>

namespace wml {

StatisticPlan::StatisticPlan(const Graph& g) : num_edges_(g.num_edges()) {
    const std::size_t n = g.num_vertices();
    for (Vertex i = 0; i < n; ++i) {
        const auto ni = g.neighbors(i);
        const auto ei = g.incident_edges(i);
        for (std::size_t a = 0; a < ni.size(); ++a) {
            const Vertex j = ni[a];
            if (j <= i) continue;
            // Triangles i < j < k.
            const auto nj = g.neighbors(j);
            const auto ej = g.incident_edges(j);
            for (std::size_t b = 0; b < nj.size(); ++b) {
                const Vertex k = nj[b];
                if (k <= j) continue;
                if (const auto ik = g.edge_id(i, k)) triangles_.push_back({ei[a], ej[b], *ik});
            }
            // 4-cycles i-j-k-l-i with i smallest and j < l.
            for (std::size_t b = 0; b < nj.size(); ++b) {
                const Vertex k = nj[b];
                if (k <= i) continue;
                const auto nk = g.neighbors(k);
                const auto ek = g.incident_edges(k);
                for (std::size_t c = 0; c < nk.size(); ++c) {
                    const Vertex l = nk[c];
                    if (l <= j || l == i) continue;
                    if (const auto li = g.edge_id(l, i)) cycles_.push_back({ei[a], ej[b], ek[c], *li});
                }
            }
        }
        // 2-paths centered at i.
        for (std::size_t a = 0; a < ni.size(); ++a)
            for (std::size_t b = a + 1; b < ni.size(); ++b) wedges_.push_back({ei[a], ei[b]});
    }
    if (n > 0) {
        const MaxDegree md = wml::max_degree_vertex(g);
        row_vertex_ = md.vertex;
        const auto inc = g.incident_edges(md.vertex);
        row_.assign(inc.begin(), inc.end());
    }
}

void StatisticPlan::check(std::span<const double> values) const {
    if (values.size() != num_edges_) throw DomainError("value count does not match the mask");
}

double StatisticPlan::kappa3(std::span<const double> v) const {
    check(v);
    CompensatedSum s;
    for (const auto& t : triangles_) s.add(v[t[0]] * v[t[1]] * v[t[2]]);
    return s.value();
}

Kappa4Breakdown StatisticPlan::kappa4(std::span<const double> v) const {
    check(v);
    CompensatedSum c4, p2, e;
    for (const auto& c : cycles_) c4.add(v[c[0]] * v[c[1]] * v[c[2]] * v[c[3]]);
    for (const auto& w : wedges_) p2.add((v[w[0]] * v[w[0]] - 1.0) * (v[w[1]] * v[w[1]] - 1.0));
    for (double x : v) {
        const double x2 = x * x;
        e.add(x2 * x2 - 6.0 * x2 + 3.0);
    }
    Kappa4Breakdown out;
    out.c4_part = c4.value();
    out.p2_part = p2.value();
    out.e_part = e.value();
    CompensatedSum total;
    total.add(out.c4_part);
    total.add(out.p2_part);
    total.add(out.e_part);
    out.total = total.value();
    return out;
}

double StatisticPlan::kappa_r(std::span<const double> v) const {
    check(v);
    if (row_.empty()) throw InapplicableError("longest-row statistic needs a vertex of positive degree");
    CompensatedSum s;
    for (std::uint32_t id : row_) s.add(v[id] * v[id]);
    return s.value() / static_cast<double>(row_.size());
}

double kappa3(const MaskedMatrix& m) { return StatisticPlan(m.graph()).kappa3(m.values()); }
Kappa4Breakdown kappa4(const MaskedMatrix& m) { return StatisticPlan(m.graph()).kappa4(m.values()); }

double kappa_r(const MaskedMatrix& m) {
    const Graph& g = m.graph();
    if (g.num_vertices() == 0) throw InapplicableError("longest-row statistic on the empty graph");
    const MaxDegree md = max_degree_vertex(g);
    if (md.degree == 0) throw InapplicableError("longest-row statistic needs a vertex of positive degree");
    CompensatedSum s;
    for (std::uint32_t id : g.incident_edges(md.vertex)) s.add(m.values()[id] * m.values()[id]);
    return s.value() / static_cast<double>(md.degree);
}

} // namespace wml
