#pragma once

#include <cstddef>
#include <vector>

#include "coles/dense.hpp"
#include "coles/filters.hpp"
#include "coles/negative_sampling.hpp"
#include "coles/sparse.hpp"

namespace coles {

enum class EigenMethod {
    /// jacobi for d <= kJacobiMaxDim, tridiagonal above.
    automatic,
    jacobi,
    /// Householder tridiagonalisation plus MRRR (LAPACK dsyevr).
    tridiagonal,
};

inline constexpr std::size_t kJacobiMaxDim = 256;

EigenMethod parse_eigen_method(const std::string& name);
std::string to_string(EigenMethod method);

struct ColesConfig {
    std::size_t dim = 64;
    FilterConfig filter;
    NegSampleConfig negatives;
    /// Weight of the orthogonality penalty in general_objective.
    double beta = 0.0;
    /// Embedding norm used by the alignment/uniformity diagnostics.
    double tau = 1.0;
    EigenMethod eigen_method = EigenMethod::automatic;

    void validate(std::size_t n, std::size_t d) const;
};

struct EmbeddingResult {
    DenseMat projection;              ///< d' x d, orthonormal rows.
    DenseMat embedding;               ///< n x d', FX P^T.
    std::vector<double> eigenvalues;  ///< top d', non-increasing.
    double objective = 0.0;           ///< trace(P M P^T).
    bool converged = true;
    /// Set when M has fewer than d' positive eigenvalues.
    bool nonpositive_eigenvalues = false;
};

/// M = fx^T (delta_w fx), symmetrised as (M + M^T) / 2.
DenseMat build_quadratic_form(const DenseMat& fx, const SparseSym& delta_w);

struct SymEigResult {
    std::vector<double> eigenvalues;  ///< descending
    DenseMat eigenvectors;            ///< column j pairs with eigenvalues[j]
    bool converged = false;
    std::size_t sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a dense symmetric matrix.
///
/// Sweeps rotate every (p, q), p < q, in row order until the off-diagonal
/// Frobenius norm is at most tol * ||M||_F or max_sweeps is reached.
/// Eigenpairs are sorted by eigenvalue, descending (stable on ties), and each
/// eigenvector is signed so its largest-magnitude entry is positive.
SymEigResult sym_eig(const DenseMat& m, double tol = 1e-12, std::size_t max_sweeps = 100);

/// Same contract as sym_eig (ordering, sign convention) via LAPACK dsyevr.
/// With top > 0 only the top eigenpairs are formed; eigenvectors is d x top.
/// Throws NumericalError if LAPACK reports failure.
SymEigResult sym_eig_tridiagonal(const DenseMat& m, std::size_t top = 0);

/// Closed-form solve given an explicit delta_w: FX = filter(w_pos, x),
/// M = FX^T delta_w FX, P = top-dim eigenvectors of M.
EmbeddingResult solve_linear_coles(const DenseMat& x, const SparseSym& w_pos,
                                   const SparseSym& delta_w, const FilterConfig& filter,
                                   std::size_t dim, EigenMethod method = EigenMethod::automatic);

/// Full pipeline: samples cfg.negatives.kappa negative graphs over the nodes
/// of w_pos, builds delta_w, and solves.
EmbeddingResult solve_linear_coles(const DenseMat& x, const SparseSym& w_pos,
                                   const ColesConfig& cfg);

/// delta_w used by the pipeline overload for the same inputs.
SparseSym assemble_delta_w(const SparseSym& w_pos, const NegSampleConfig& negatives);

/// trace(Y^T delta_w Y).
double coles_objective(const DenseMat& y, const SparseSym& delta_w);

/// ||Y^T Y - I||_F^2.
double orthogonality_penalty(const DenseMat& y);

/// coles_objective - beta * orthogonality_penalty (penalty subtracted under
/// maximisation).
double general_objective(const DenseMat& y, const SparseSym& delta_w, double beta);

} // namespace coles
