#pragma once

#include "wml/graph.hpp"
#include "wml/random.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace wml {

// d x n, one column X_i per vertex.
struct LatentMatrix {
    Eigen::MatrixXd x;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(x.rows()); }
    std::size_t columns() const noexcept { return static_cast<std::size_t>(x.cols()); }
};

// Entries drawn column by column (column-major order).
LatentMatrix sample_latent(std::size_t d, std::size_t n, Rng& rng);

// Symmetric matrix observed on the edges of a mask; values are indexed by edge id.
class MaskedMatrix {
public:
    MaskedMatrix(GraphPtr graph, std::vector<double> values);

    const Graph& graph() const noexcept { return *graph_; }
    const GraphPtr& graph_ptr() const noexcept { return graph_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> mutable_values() noexcept { return values_; }
    // Throws DomainError if (i, j) is not an edge.
    double value(Vertex i, Vertex j) const;

private:
    GraphPtr graph_;
    std::vector<double> values_;
};

enum class WishartMethod {
    automatic,  // bartlett when d > n and n is small enough to hold W, else latent
    latent,     // d^{-1/2} <X_i, X_j> from a full latent sample
    bartlett,   // Gram matrix W W^T from the triangular Bartlett factor; needs d >= n
};

WishartMethod resolve_method(std::size_t n, std::size_t d, WishartMethod method);

// Reusable workspace for repeated Wishart draws on one mask.
//
// Bartlett draw order: row i = 0..n-1, the normals W_{i,0..i-1} first, then
// W_{i,i} = sqrt(chi2(d - i)).
class WishartSampler {
public:
    WishartSampler(GraphPtr graph, std::size_t d, WishartMethod method = WishartMethod::automatic);

    void sample(Rng& rng, std::span<double> out);
    MaskedMatrix operator()(Rng& rng);

    WishartMethod method() const noexcept { return method_; }
    std::size_t d() const noexcept { return d_; }

private:
    GraphPtr graph_;
    std::size_t d_;
    WishartMethod method_;
    double scale_;
    Eigen::MatrixXd work_;
};

MaskedMatrix masked_wishart(GraphPtr graph, std::size_t d, Rng& rng,
                            WishartMethod method = WishartMethod::automatic);
MaskedMatrix masked_wishart_from_latent(GraphPtr graph, const LatentMatrix& x);

// One standard normal per edge, in edge-id order.
void sample_goe(const Graph& graph, Rng& rng, std::span<double> out);
MaskedMatrix masked_goe(GraphPtr graph, Rng& rng);

struct BartlettDecomposition {
    Eigen::MatrixXd w;  // k x k lower triangular
    Eigen::MatrixXd u;  // d x k, orthonormal columns
};

// Classical Gram-Schmidt on the columns of x, with one re-orthogonalization
// pass per column when k/d > 0.5. Throws NumericalError on rank deficiency.
BartlettDecomposition bartlett_decompose(const Eigen::MatrixXd& x);
inline BartlettDecomposition bartlett_decompose(const LatentMatrix& x) { return bartlett_decompose(x.x); }

// KL(N(0, sigma1) || N(0, sigma2)). Throws DomainError unless both are symmetric positive definite.
double gaussian_kl(const Eigen::MatrixXd& sigma1, const Eigen::MatrixXd& sigma2);

} // namespace wml
