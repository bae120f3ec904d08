#pragma once

namespace rgg::tol {

// Centralized defaults; every operation taking a tolerance parameter defaults
// to one of these.
inline constexpr double lu_residual = 1e-10;        // times ||A||_max * n
inline constexpr double cholesky_residual = 1e-9;   // times ||A||_max * n
inline constexpr double cholesky_pivot = 1e-10;     // times ||A||_max
inline constexpr double jacobi_residual = 1e-9;     // times ||A||_max
inline constexpr double jacobi_offdiag = 1e-12;     // times ||A||_F
inline constexpr int jacobi_max_sweeps = 100;
inline constexpr double rank_eigenvalue = 1e-9;     // times lambda_max
inline constexpr double singular_det = 1e-300;      // |det| floor for inverse
inline constexpr double reconstruction = 1e-9;      // times ||Sigma||_max
inline constexpr double closed_form_base = 1e-8;    // relative, conditioning-scaled

}  // namespace rgg::tol
