#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "linkhide/graph.hpp"
#include "linkhide/local_indices.hpp"

namespace linkhide {

enum class GlobalIndexKind { Katz, LHNGlobal, ACT, Cosine, RWR, SimRank, MFI };

inline constexpr std::array<GlobalIndexKind, 7> kAllGlobalIndices = {
    GlobalIndexKind::Katz, GlobalIndexKind::LHNGlobal, GlobalIndexKind::ACT,
    GlobalIndexKind::Cosine, GlobalIndexKind::RWR, GlobalIndexKind::SimRank,
    GlobalIndexKind::MFI};

std::string_view name(GlobalIndexKind kind);
std::optional<GlobalIndexKind> parse_global_index(std::string_view name);

/// Dense global indices are only offered up to this many nodes.
inline constexpr std::size_t kMaxGlobalNodes = 2000;

struct GlobalParams {
    double katz_beta_rule = 0.5;  ///< beta = katz_beta_rule / lambda*
    double lhn_phi = 0.97;
    double rwr_return = 0.75;
    double simrank_decay = 0.8;
    int simrank_max_iters = 100;
    double simrank_tolerance = 1e-6;
    double eigen_tolerance = 1e-10;
    int eigen_max_iters = 10000;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

class LinearAlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int iterations)
        : std::runtime_error(what + " after " + std::to_string(iterations) + " iterations"),
          iterations_(iterations) {}
    int iterations() const { return iterations_; }

private:
    int iterations_;
};

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct SimilarityMatrix {
    Matrix<Scalar> values;
    GlobalIndexKind kind;
};

template <typename Scalar = double>
Matrix<Scalar> adjacency_matrix(const Graph& g) {
    const Eigen::Index n = Eigen::Index(g.node_count());
    Matrix<Scalar> a = Matrix<Scalar>::Zero(n, n);
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (NodeId w : g.neighbors(v))
            a(v, w) = Scalar(1);
    return a;
}

template <typename Scalar = double>
Vector<Scalar> degree_vector(const Graph& g) {
    Vector<Scalar> d(Eigen::Index(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v)
        d(v) = Scalar(g.degree(v));
    return d;
}

/// L = D - A
template <typename Scalar = double>
Matrix<Scalar> laplacian_matrix(const Graph& g) {
    Matrix<Scalar> l = -adjacency_matrix<Scalar>(g);
    l.diagonal() = degree_vector<Scalar>(g);
    return l;
}

/// Largest adjacency eigenvalue by power iteration on A + I from the normalized
/// all-ones vector (the shift keeps bipartite graphs from oscillating).
template <typename Scalar = double>
Scalar largest_eigenvalue(const Graph& g, const GlobalParams& params = {}) {
    if (g.edge_count() == 0)
        throw LinearAlgebraError("largest_eigenvalue: graph has no edges");
    const Eigen::Index n = Eigen::Index(g.node_count());
    Vector<Scalar> x = Vector<Scalar>::Ones(n).normalized();
    Vector<Scalar> y(n);
    Scalar previous = Scalar(0);
    for (int it = 1; it <= params.eigen_max_iters; ++it) {
        // y = (A + I) x using the adjacency lists directly
        for (NodeId v = 0; v < g.node_count(); ++v) {
            Scalar s = x(v);
            for (NodeId w : g.neighbors(v))
                s += x(w);
            y(v) = s;
        }
        const Scalar rayleigh = x.dot(y) - Scalar(1);
        x = y.normalized();
        if (it > 1 && std::abs(rayleigh - previous) <= Scalar(params.eigen_tolerance))
            return rayleigh;
        previous = rayleigh;
    }
    throw ConvergenceError("largest_eigenvalue: power iteration did not converge",
                           params.eigen_max_iters);
}

/// Moore-Penrose pseudoinverse of the graph Laplacian via symmetric eigendecomposition.
template <typename Scalar = double>
Matrix<Scalar> laplacian_pseudoinverse(const Graph& g) {
    const Eigen::Index n = Eigen::Index(g.node_count());
    if (g.edge_count() == 0)
        return Matrix<Scalar>::Zero(n, n);
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(laplacian_matrix<Scalar>(g));
    if (eig.info() != Eigen::Success)
        throw LinearAlgebraError("laplacian_pseudoinverse: eigendecomposition failed");
    const auto& lambda = eig.eigenvalues();
    const Scalar cutoff = Scalar(1e-10) * lambda.cwiseAbs().maxCoeff();
    Vector<Scalar> inv = Vector<Scalar>::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (lambda(i) > cutoff)
            inv(i) = Scalar(1) / lambda(i);
    const auto& v = eig.eigenvectors();
    Matrix<Scalar> pinv = v * inv.asDiagonal() * v.transpose();
    for (NodeId i = 0; i < g.node_count(); ++i)
        if (g.degree(i) == 0) {
            pinv.row(i).setZero();
            pinv.col(i).setZero();
        }
    return Scalar(0.5) * (pinv + pinv.transpose());
}

namespace detail {

template <typename Scalar>
Matrix<Scalar> checked_inverse(const Matrix<Scalar>& m, const char* what) {
    Eigen::PartialPivLU<Matrix<Scalar>> lu(m);
    if (!(lu.rcond() > Scalar(1e-14)))
        throw LinearAlgebraError(std::string(what) + ": matrix is singular");
    return lu.inverse();
}

template <typename Scalar>
Matrix<Scalar> simrank(const Graph& g, const GlobalParams& params) {
    const Eigen::Index n = Eigen::Index(g.node_count());
    // Row-normalized transition matrix; rows of isolated nodes stay zero.
    Matrix<Scalar> p = Matrix<Scalar>::Zero(n, n);
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (NodeId w : g.neighbors(v))
            p(v, w) = Scalar(1) / Scalar(g.degree(v));
    Matrix<Scalar> s = Matrix<Scalar>::Identity(n, n);
    const Scalar c = Scalar(params.simrank_decay);
    for (int it = 1; it <= params.simrank_max_iters; ++it) {
        Matrix<Scalar> next = c * (p * s * p.transpose());
        next.diagonal().setOnes();
        const Scalar change = (next - s).cwiseAbs().maxCoeff();
        s = std::move(next);
        if (change < Scalar(params.simrank_tolerance))
            return Scalar(0.5) * (s + s.transpose());
    }
    throw ConvergenceError("simrank: fixed point not reached", params.simrank_max_iters);
}

}  // namespace detail

/// Whole-graph similarity matrix for one of the seven global indices.
template <typename Scalar = double>
SimilarityMatrix<Scalar> global_similarity(const Graph& g, GlobalIndexKind kind,
                                           const GlobalParams& params = {}) {
    params.validate();
    const Eigen::Index n = Eigen::Index(g.node_count());
    const Matrix<Scalar> id = Matrix<Scalar>::Identity(n, n);
    Matrix<Scalar> s;
    switch (kind) {
    case GlobalIndexKind::Katz: {
        const Scalar beta = Scalar(params.katz_beta_rule) / largest_eigenvalue<Scalar>(g, params);
        s = detail::checked_inverse<Scalar>(id - beta * adjacency_matrix<Scalar>(g), "katz") - id;
        break;
    }
    case GlobalIndexKind::LHNGlobal: {
        const Scalar lambda = largest_eigenvalue<Scalar>(g, params);
        Vector<Scalar> dinv = degree_vector<Scalar>(g);
        for (Eigen::Index i = 0; i < n; ++i)
            dinv(i) = dinv(i) > 0 ? Scalar(1) / dinv(i) : Scalar(0);
        const Matrix<Scalar> inner = detail::checked_inverse<Scalar>(
            id - (Scalar(params.lhn_phi) / lambda) * adjacency_matrix<Scalar>(g), "lhng");
        s = (Scalar(2) * Scalar(g.edge_count()) * lambda) *
            (dinv.asDiagonal() * inner * dinv.asDiagonal());
        break;
    }
    case GlobalIndexKind::ACT:
    case GlobalIndexKind::Cosine: {
        const Matrix<Scalar> lp = laplacian_pseudoinverse<Scalar>(g);
        s = Matrix<Scalar>::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                if (kind == GlobalIndexKind::ACT) {
                    const Scalar denom = lp(i, i) + lp(j, j) - Scalar(2) * lp(i, j);
                    s(i, j) = (i == j || !(denom > 0)) ? Scalar(0) : Scalar(1) / denom;
                } else {
                    const Scalar norm = std::sqrt(lp(i, i) * lp(j, j));
                    s(i, j) = norm > 0 ? lp(i, j) / norm : Scalar(0);
                }
            }
        break;
    }
    case GlobalIndexKind::RWR: {
        if (g.edge_count() == 0)
            throw LinearAlgebraError("rwr: graph has no edges");
        Matrix<Scalar> p = Matrix<Scalar>::Zero(n, n);
        for (NodeId v = 0; v < g.node_count(); ++v)
            for (NodeId w : g.neighbors(v))
                p(v, w) = Scalar(1) / Scalar(g.degree(v));
        const Scalar c = Scalar(params.rwr_return);
        const Matrix<Scalar> q =
            (Scalar(1) - c) * detail::checked_inverse<Scalar>(id - c * p.transpose(), "rwr");
        s = q + q.transpose();
        break;
    }
    case GlobalIndexKind::SimRank:
        s = detail::simrank<Scalar>(g, params);
        break;
    case GlobalIndexKind::MFI:
        s = detail::checked_inverse<Scalar>(id + laplacian_matrix<Scalar>(g), "mfi");
        break;
    }
    return {std::move(s), kind};
}

/// Restricts a similarity matrix to the non-edges of g, ascending by pair.
template <typename Scalar>
std::vector<ScoredPair> matrix_to_nonedge_scores(const SimilarityMatrix<Scalar>& s,
                                                 const Graph& g) {
    if (s.values.rows() != Eigen::Index(g.node_count()) ||
        s.values.cols() != Eigen::Index(g.node_count()))
        throw std::invalid_argument("matrix_to_nonedge_scores: dimension mismatch");
    std::vector<ScoredPair> out;
    out.reserve(std::size_t(g.non_edge_count()));
    for (Edge e : non_edges(g))
        out.push_back({e, double(s.values(e.a, e.b))});
    return out;
}

}  // namespace linkhide
