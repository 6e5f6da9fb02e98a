#include "wml/ensembles.hpp"

#include "wml/errors.hpp"

#include <cmath>

namespace wml {

namespace {

constexpr std::size_t bartlett_max_vertices = 4096;

GraphPtr require_graph(GraphPtr g) {
    if (!g) throw DomainError("null mask graph");
    return g;
}

void fill_normal(Eigen::MatrixXd& m, Rng& rng) {
    double* p = m.data();
    const auto size = m.size();
    for (Eigen::Index i = 0; i < size; ++i) p[i] = rng.normal();
}

} // namespace

LatentMatrix sample_latent(std::size_t d, std::size_t n, Rng& rng) {
    if (d < 1 || n < 1) throw DomainError("latent dimensions must be positive");
    LatentMatrix out{Eigen::MatrixXd(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n))};
    fill_normal(out.x, rng);
    return out;
}

MaskedMatrix::MaskedMatrix(GraphPtr graph, std::vector<double> values)
    : graph_(require_graph(std::move(graph))), values_(std::move(values)) {
    if (values_.size() != graph_->num_edges()) throw DomainError("one value per edge required");
}

double MaskedMatrix::value(Vertex i, Vertex j) const {
    const auto id = graph_->edge_id(i, j);
    if (!id) throw DomainError("(" + std::to_string(i) + ", " + std::to_string(j) + ") is not an edge of the mask");
    return values_[*id];
}

WishartMethod resolve_method(std::size_t n, std::size_t d, WishartMethod method) {
    if (method != WishartMethod::automatic) return method;
    return d > n && n <= bartlett_max_vertices ? WishartMethod::bartlett : WishartMethod::latent;
}

WishartSampler::WishartSampler(GraphPtr graph, std::size_t d, WishartMethod method)
    : graph_(require_graph(std::move(graph))), d_(d) {
    if (d < 1) throw DomainError("degrees of freedom must be at least 1");
    const std::size_t n = graph_->num_vertices();
    method_ = resolve_method(n, d, method);
    if (method_ == WishartMethod::bartlett && d < n)
        throw DomainError("bartlett sampling needs d >= n");
    scale_ = 1.0 / std::sqrt(static_cast<double>(d));
    if (method_ == WishartMethod::bartlett)
        work_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    else
        work_.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
}

void WishartSampler::sample(Rng& rng, std::span<double> out) {
    const Graph& g = *graph_;
    if (out.size() != g.num_edges()) throw DomainError("output span must hold one value per edge");
    if (method_ == WishartMethod::latent) {
        fill_normal(work_, rng);
        const auto edges = g.edges();
        for (std::size_t e = 0; e < edges.size(); ++e)
            out[e] = scale_ * work_.col(edges[e].u).dot(work_.col(edges[e].v));
        return;
    }
    // Row i of the factor is stored in column i so that W_{i,0..k} is contiguous.
    const std::size_t n = g.num_vertices();
    for (std::size_t i = 0; i < n; ++i) {
        double* col = work_.col(static_cast<Eigen::Index>(i)).data();
        for (std::size_t j = 0; j < i; ++j) col[j] = rng.normal();
        col[i] = std::sqrt(rng.chi_squared(static_cast<double>(d_ - i)));
    }
    const auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Vertex a = edges[e].u, b = edges[e].v;  // a < b
        const double* wa = work_.col(a).data();
        const double* wb = work_.col(b).data();
        double s = 0.0;
        for (Vertex t = 0; t <= a; ++t) s += wa[t] * wb[t];
        out[e] = scale_ * s;
    }
}

MaskedMatrix WishartSampler::operator()(Rng& rng) {
    std::vector<double> values(graph_->num_edges());
    sample(rng, values);
    return MaskedMatrix(graph_, std::move(values));
}

MaskedMatrix masked_wishart(GraphPtr graph, std::size_t d, Rng& rng, WishartMethod method) {
    WishartSampler sampler(std::move(graph), d, method);
    return sampler(rng);
}

MaskedMatrix masked_wishart_from_latent(GraphPtr graph, const LatentMatrix& x) {
    require_graph(graph);
    if (x.columns() != graph->num_vertices()) throw DomainError("latent matrix needs one column per vertex");
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.dim()));
    std::vector<double> values;
    values.reserve(graph->num_edges());
    for (const Edge& e : graph->edges()) values.push_back(scale * x.x.col(e.u).dot(x.x.col(e.v)));
    return MaskedMatrix(std::move(graph), std::move(values));
}

void sample_goe(const Graph& graph, Rng& rng, std::span<double> out) {
    if (out.size() != graph.num_edges()) throw DomainError("output span must hold one value per edge");
    for (double& v : out) v = rng.normal();
}

MaskedMatrix masked_goe(GraphPtr graph, Rng& rng) {
    require_graph(graph);
    std::vector<double> values(graph->num_edges());
    sample_goe(*graph, rng, values);
    return MaskedMatrix(std::move(graph), std::move(values));
}

BartlettDecomposition bartlett_decompose(const Eigen::MatrixXd& x) {
    const Eigen::Index d = x.rows(), k = x.cols();
    if (k < 1 || d < 1) throw DomainError("bartlett_decompose needs a nonempty matrix");
    if (k > d) throw DomainError("bartlett_decompose needs k <= d");
    const bool reorthogonalize = 2 * k > d;
    BartlettDecomposition out{Eigen::MatrixXd::Zero(k, k), Eigen::MatrixXd(d, k)};
    Eigen::VectorXd v(d);
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto z = x.col(i);
        v = z;
        for (Eigen::Index j = 0; j < i; ++j) {
            out.w(i, j) = z.dot(out.u.col(j));
            v.noalias() -= out.w(i, j) * out.u.col(j);
        }
        if (reorthogonalize) {
            for (Eigen::Index j = 0; j < i; ++j) {
                const double c = v.dot(out.u.col(j));
                out.w(i, j) += c;
                v.noalias() -= c * out.u.col(j);
            }
        }
        const double norm = v.norm();
        if (!(norm >= 1e-12)) throw NumericalError("columns are numerically rank deficient");
        out.w(i, i) = norm;
        out.u.col(i) = v / norm;
    }
    return out;
}

double gaussian_kl(const Eigen::MatrixXd& sigma1, const Eigen::MatrixXd& sigma2) {
    if (sigma1.rows() != sigma1.cols() || sigma2.rows() != sigma2.cols() || sigma1.rows() != sigma2.rows() ||
        sigma1.rows() == 0)
        throw DomainError("gaussian_kl needs two square matrices of the same size");
    auto symmetric = [](const Eigen::MatrixXd& s) {
        return (s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, s.cwiseAbs().maxCoeff());
    };
    if (!symmetric(sigma1) || !symmetric(sigma2)) throw DomainError("gaussian_kl needs symmetric matrices");
    const Eigen::LLT<Eigen::MatrixXd> l1(sigma1), l2(sigma2);
    if (l1.info() != Eigen::Success || l2.info() != Eigen::Success)
        throw DomainError("gaussian_kl needs positive definite matrices");
    auto logdet = [](const Eigen::LLT<Eigen::MatrixXd>& l) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < l.matrixLLT().rows(); ++i) {
            const double diag = l.matrixLLT()(i, i);
            if (!(diag > 0.0)) throw DomainError("gaussian_kl needs positive definite matrices");
            s += std::log(diag);
        }
        return 2.0 * s;
    };
    const double trace = l2.solve(sigma1).trace();
    return 0.5 * (logdet(l2) - logdet(l1) + trace - static_cast<double>(sigma1.rows()));
}

} // namespace wml
