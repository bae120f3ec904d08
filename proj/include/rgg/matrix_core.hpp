#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rgg/matrix.hpp"
#include "rgg/tolerances.hpp"

namespace rgg {

enum class FactorizationKind { LU, Cholesky, Schur, Root };

/// Tagged factorization result. Which members are populated depends on kind:
///   LU:       l, u, perm (P*A = L*U)
///   Cholesky: g (A = G*G^t)
///   Schur:    s, d, s_inv (A = S*D*S^-1)
///   Root:     b (A = B*B)
/// residual is the max-abs reconstruction error recorded at creation.
struct Factorization {
    FactorizationKind kind;
    Matrix l, u, g, s, d, s_inv, b;
    std::vector<std::size_t> perm;  // row permutation: P*A row i == A row perm[i]
    double residual = 0.0;

    Matrix permutation_matrix() const;
    /// Recomputes ||reconstruction - a||_max independently of `residual`.
    double reconstruction_error(const Matrix& a) const;
};

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // orthonormal columns
};

/// Partial-pivoted LU of a general square matrix; singular inputs permitted
/// (zero pivots yield zero rows in U).
Factorization lu_pivoted(const Matrix& a);

/// Semidefinite Cholesky, computed column by column with the zero-pivot case
/// (g_jj = 0 skips the column). Throws NotPsdError if a diagonal pivot drops
/// below -tol where tol = pivot_tol * ||A||_max.
Factorization cholesky_psd(const SymMatrix& a, double pivot_tol = tol::cholesky_pivot);

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm falls below
/// offdiag_tol * ||A||_F. Throws NoConvergenceError after max_sweeps.
Spectrum jacobi_eigen(const SymMatrix& a, double offdiag_tol = tol::jacobi_offdiag,
                      int max_sweeps = tol::jacobi_max_sweeps);

/// Determinant via pivoted LU (product of u_ii, sign of P).
double determinant(const Matrix& a);

/// Inverse via LU solves. Throws SingularError on rank-deficient input.
Matrix inverse(const Matrix& a);

/// Solves A*x = rhs via an existing LU factorization.
std::vector<double> lu_solve(const Factorization& lu, const std::vector<double>& rhs);

/// Coefficients c_0..c_n of det(A - lambda*I) = sum_k c_k lambda^k, computed
/// from the spectrum as (-1)^n prod (lambda - lambda_i); c_n = (-1)^n.
std::vector<double> char_poly(const SymMatrix& a);

/// Evaluates a coefficient list (ascending powers) at lambda.
double eval_poly(const std::vector<double>& coeffs, double lambda);

/// Wolkowicz trace bounds for a positive definite symmetric matrix:
/// (det(A)/(m + s/sqrt(n-1))^{n-1}, m + s*sqrt(n-1)) with m = tr(A)/n,
/// s^2 = tr(A^2)/n - m^2. For n = 1 both bounds equal a_11.
std::pair<double, double> wolkowicz_bounds(const SymMatrix& a);

/// Count of eigenvalues exceeding rel_tol * lambda_max.
std::size_t numerical_rank(const SymMatrix& a, double rel_tol = tol::rank_eigenvalue);

}  // namespace rgg
