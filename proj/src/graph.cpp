#include "wml/graph.hpp"

#include "wml/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>

namespace wml {

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::optional<Bipartition> orientation)
    : n_(n), edges_(std::move(edges)), orientation_(std::move(orientation)) {
    if (n_ > std::numeric_limits<Vertex>::max()) throw DomainError("too many vertices");
    for (Edge& e : edges_) {
        if (e.u >= n_ || e.v >= n_) throw DomainError("edge endpoint out of range");
        if (e.u == e.v) throw DomainError("self-loop in mask graph");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw DomainError("duplicate edge in mask graph");
    if (edges_.size() > std::numeric_limits<std::uint32_t>::max()) throw DomainError("too many edges");

    std::vector<std::size_t> deg(n_, 0);
    for (const Edge& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
    adj_.resize(offsets_[n_]);
    adj_edge_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        adj_[fill[e.u]] = e.v;
        adj_edge_[fill[e.u]++] = id;
        adj_[fill[e.v]] = e.u;
        adj_edge_[fill[e.v]++] = id;
    }
    std::vector<std::pair<Vertex, std::uint32_t>> tmp;
    for (std::size_t v = 0; v < n_; ++v) {
        const auto b = offsets_[v], e = offsets_[v + 1];
        if (std::is_sorted(adj_.begin() + static_cast<std::ptrdiff_t>(b),
                           adj_.begin() + static_cast<std::ptrdiff_t>(e)))
            continue;
        tmp.clear();
        for (auto i = b; i < e; ++i) tmp.emplace_back(adj_[i], adj_edge_[i]);
        std::sort(tmp.begin(), tmp.end());
        for (auto i = b; i < e; ++i) std::tie(adj_[i], adj_edge_[i]) = tmp[i - b];
    }

    if (orientation_) {
        side_.assign(n_, 2);
        for (Vertex v : orientation_->left) {
            if (v >= n_ || side_[v] != 2) throw DomainError("orientation is not a partition of the vertices");
            side_[v] = 1;
        }
        for (Vertex v : orientation_->right) {
            if (v >= n_ || side_[v] != 2) throw DomainError("orientation is not a partition of the vertices");
            side_[v] = 0;
        }
        if (std::find(side_.begin(), side_.end(), 2) != side_.end())
            throw DomainError("orientation does not cover every vertex");
        for (const Edge& e : edges_)
            if (side_[e.u] == side_[e.v]) throw DomainError("edge does not cross the bipartition");
        std::sort(orientation_->left.begin(), orientation_->left.end());
        std::sort(orientation_->right.begin(), orientation_->right.end());
    }
}

void Graph::check_vertex(Vertex v) const {
    if (v >= n_) throw DomainError("vertex label " + std::to_string(v) + " out of range");
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    check_vertex(v);
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const std::uint32_t> Graph::incident_edges(Vertex v) const {
    check_vertex(v);
    return {adj_edge_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::degree(Vertex v) const {
    check_vertex(v);
    return offsets_[v + 1] - offsets_[v];
}

std::optional<std::uint32_t> Graph::edge_id(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_ || a == b) return std::nullopt;
    if (degree(a) > degree(b)) std::swap(a, b);
    const auto nb = neighbors(a);
    const auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return std::nullopt;
    return adj_edge_[offsets_[a] + static_cast<std::size_t>(it - nb.begin())];
}

bool Graph::has_edge(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }

bool Graph::is_left(Vertex v) const {
    if (!orientation_) throw DomainError("graph has no orientation");
    check_vertex(v);
    return side_[v] == 1;
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
    return Graph(n, std::move(edges));
}

Graph complete_bipartite(std::size_t n, std::size_t m) {
    std::vector<Edge> edges;
    edges.reserve(n * m);
    Bipartition sides;
    for (Vertex i = 0; i < n; ++i) {
        sides.left.push_back(i);
        for (std::size_t j = 0; j < m; ++j) edges.push_back({i, static_cast<Vertex>(n + j)});
    }
    for (std::size_t j = 0; j < m; ++j) sides.right.push_back(static_cast<Vertex>(n + j));
    return Graph(n + m, std::move(edges), std::move(sides));
}

static void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability must lie in [0, 1]");
}

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
    check_probability(p);
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) edges.push_back({i, j});
    return Graph(n, std::move(edges));
}

Graph bipartite_erdos_renyi(std::size_t n, std::size_t m, double p, Rng& rng) {
    check_probability(p);
    std::vector<Edge> edges;
    Bipartition sides;
    for (Vertex i = 0; i < n; ++i) {
        sides.left.push_back(i);
        for (std::size_t j = 0; j < m; ++j)
            if (rng.uniform01() < p) edges.push_back({i, static_cast<Vertex>(n + j)});
    }
    for (std::size_t j = 0; j < m; ++j) sides.right.push_back(static_cast<Vertex>(n + j));
    return Graph(n + m, std::move(edges), std::move(sides));
}

Graph star_graph(std::size_t leaves) {
    std::vector<Edge> edges;
    for (Vertex i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return Graph(leaves + 1, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw DomainError("cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % n)});
    return Graph(n, std::move(edges));
}

std::size_t degree(const Graph& g, Vertex v) { return g.degree(v); }

std::size_t shared_degree(const Graph& g, std::span<const Vertex> vs) {
    if (vs.empty()) throw DomainError("shared_degree needs at least one vertex");
    std::vector<Vertex> distinct(vs.begin(), vs.end());
    for (Vertex v : distinct) (void)g.degree(v);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    auto first = g.neighbors(distinct.front());
    std::vector<Vertex> common(first.begin(), first.end()), next;
    for (std::size_t i = 1; i < distinct.size() && !common.empty(); ++i) {
        const auto nb = g.neighbors(distinct[i]);
        next.clear();
        std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(), std::back_inserter(next));
        common.swap(next);
    }
    return common.size();
}

MaxDegree max_degree_vertex(const Graph& g) {
    if (g.num_vertices() == 0) throw DomainError("max_degree_vertex on the empty graph");
    MaxDegree best{0, g.degree(0)};
    for (Vertex v = 1; v < g.num_vertices(); ++v)
        if (g.degree(v) > best.degree) best = {v, g.degree(v)};
    return best;
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
    if (perm.size() != g.num_vertices()) throw DomainError("permutation size mismatch");
    std::vector<Edge> edges;
    edges.reserve(g.num_edges());
    for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
    std::optional<Bipartition> sides;
    if (g.orientation()) {
        sides.emplace();
        for (Vertex v : g.orientation()->left) sides->left.push_back(perm[v]);
        for (Vertex v : g.orientation()->right) sides->right.push_back(perm[v]);
    }
    return Graph(g.num_vertices(), std::move(edges), std::move(sides));
}

namespace {

template <class T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    if (value.empty()) throw ParseError("missing value for '" + std::string(key) + "'", std::string(key) + "=");
    if constexpr (std::is_floating_point_v<T>) {
        const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
        if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
            throw ParseError("bad number '" + std::string(value) + "'", std::string(value));
    } else {
        const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
        if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
            throw ParseError("bad integer '" + std::string(value) + "'", std::string(value));
    }
    return out;
}

} // namespace

GraphSpec parse_graph_spec(std::string_view text) {
    GraphSpec spec;
    const auto colon = text.find(':');
    spec.family = std::string(text.substr(0, colon));
    static const std::vector<std::string> families = {"complete", "kbip", "er", "biper", "star", "cycle"};
    if (std::find(families.begin(), families.end(), spec.family) == families.end())
        throw ParseError("unknown graph family '" + spec.family + "'", spec.family);
    bool has_n = false, has_m = false, has_p = false;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(item) + "'", std::string(item));
            const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
            if (key == "n" || key == "k") {
                spec.n = parse_number<std::size_t>(key, value);
                has_n = true;
            } else if (key == "m") {
                spec.m = parse_number<std::size_t>(key, value);
                has_m = true;
            } else if (key == "p") {
                spec.p = parse_number<double>(key, value);
                has_p = true;
            } else if (key == "seed") {
                spec.seed = parse_number<std::uint64_t>(key, value);
            } else {
                throw ParseError("unknown graph parameter '" + std::string(key) + "'", std::string(key));
            }
        }
    }
    if (!has_n) throw ParseError("graph spec '" + std::string(text) + "' lacks n", std::string(text));
    const bool needs_m = spec.family == "kbip" || spec.family == "biper";
    const bool needs_p = spec.family == "er" || spec.family == "biper";
    if (needs_m && !has_m) throw ParseError("graph spec '" + std::string(text) + "' lacks m", std::string(text));
    if (needs_p && !has_p) throw ParseError("graph spec '" + std::string(text) + "' lacks p", std::string(text));
    if (needs_p && !(spec.p >= 0.0 && spec.p <= 1.0))
        throw ParseError("edge probability outside [0, 1]", "p=" + std::to_string(spec.p));
    return spec;
}

Graph build_graph(const GraphSpec& spec, std::uint64_t default_seed) {
    Rng rng(spec.seed.value_or(derive_seed(default_seed, seed_tag::graph, 0)));
    if (spec.family == "complete") return complete_graph(spec.n);
    if (spec.family == "kbip") return complete_bipartite(spec.n, spec.m);
    if (spec.family == "er") return erdos_renyi(spec.n, spec.p, rng);
    if (spec.family == "biper") return bipartite_erdos_renyi(spec.n, spec.m, spec.p, rng);
    if (spec.family == "star") return star_graph(spec.n);
    if (spec.family == "cycle") return cycle_graph(spec.n);
    throw ParseError("unknown graph family '" + spec.family + "'", spec.family);
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.num_vertices();
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    if (g.orientation()) j["left"] = g.orientation()->left;
    return j.dump();
}

Graph graph_from_json(std::string_view text) {
    const auto j = nlohmann::json::parse(text);
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
    std::optional<Bipartition> sides;
    if (j.contains("left")) {
        sides.emplace();
        sides->left = j["left"].get<std::vector<Vertex>>();
        std::vector<std::uint8_t> is_left(n, 0);
        for (Vertex v : sides->left) {
            if (v >= n) throw DomainError("left vertex out of range");
            is_left[v] = 1;
        }
        for (Vertex v = 0; v < n; ++v)
            if (!is_left[v]) sides->right.push_back(v);
    }
    return Graph(n, std::move(edges), std::move(sides));
}

} // namespace wml
