#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rgg/matrix.hpp"
#include "rgg/matrix_core.hpp"
#include "rgg/model.hpp"

namespace rgg {

/// The asymptotic covariance matrix and its two building blocks.
/// sigma_sb has entries V*d*kappa_d/(2(tau_i+tau_j+d)), sigma_sp has entries
/// V*d^2*kappa_d^2/((tau_i+d)(tau_j+d)); sigma is the regime combination:
/// sb (subcritical), sb + c*sp (c in (0,1]), sb/c + sp (c > 1), sp (supercritical).
struct CovarianceBundle {
    SymMatrix sigma_sb;
    SymMatrix sigma_sp;
    SymMatrix sigma;
    ModelParams params;
};

/// The Cauchy matrix omega_ij = 1/(x_i+x_j) with sigma_sb = scale * omega.
struct CauchyView {
    SymMatrix omega;
    double scale;  // V*d*kappa_d/2
};

CovarianceBundle build_sigma(const ModelParams& params);
CauchyView cauchy_view(const ModelParams& params);

// --- Supercritical closed forms (require Supercritical regime, n >= 2) ---

/// Eigenvalues 0 (multiplicity n-1) and lambda2 = V*d^2*kappa_d^2*sum 1/a_i^2,
/// with the unnormalized eigenbasis v_1..v_{n-1} (kernel) and v_n.
struct SpSpectrum {
    double lambda2;
    std::vector<std::vector<double>> basis;  // n vectors of length n
};

SpSpectrum sp_spectrum(const ModelParams& params);
Factorization sp_schur(const ModelParams& params);
Factorization sp_lu(const ModelParams& params);
Factorization sp_cholesky(const ModelParams& params);
Factorization sp_root(const ModelParams& params);

// --- Subcritical closed forms (require Subcritical regime) ---

double sb_det(const ModelParams& params);
SymMatrix sb_inverse(const ModelParams& params);
/// Characteristic polynomial coefficients, ascending powers, leading (-1)^n.
/// Subset sums are enumerated directly; n > 20 is rejected.
std::vector<double> sb_charpoly(const ModelParams& params);
Factorization sb_lu(const ModelParams& params);
Factorization sb_cholesky(const ModelParams& params);
/// Trace-based brackets (S_lower, S_upper) containing every eigenvalue;
/// tight for n = 2. For n = 1 both equal sigma_11.
std::pair<double, double> sb_eigen_bounds(const ModelParams& params);
/// Closed-form eigenvalues of the 2x2 subcritical matrix (n = 2 only).
std::pair<double, double> sb_eigenvalues_n2(const ModelParams& params);

// --- Critical closed forms (require CriticalLow/CriticalHigh regime) ---

SymMatrix cr_inverse(const ModelParams& params);
double cr_det(const ModelParams& params);
std::vector<double> cr_charpoly(const ModelParams& params);

struct EigenInterval {
    double lower;
    double upper;
};

struct CrEigenBounds {
    double lower;  // global bracket
    double upper;
    std::vector<EigenInterval> per_index;  // one per eigenvalue
    bool oracle_assisted;  // per-index used oracle eigenvalues of sigma_sb (n > 2)
};

CrEigenBounds cr_eigen_bounds(const ModelParams& params);

/// Natural increasing powers (tau_i = i-1, d = 2) only; any other
/// parameterization throws NaturalPowersOnlyError.
Factorization cr_lu_natural(const ModelParams& params);
Factorization cr_cholesky_natural(const ModelParams& params);
double cr_det_natural(const ModelParams& params);

// --- Cross-regime decomposition relations ---

/// Entrywise identities L^cr == L^sb and U^cr == U^sb + c*U^sp (c <= 1) or
/// U^cr == U^sb/c + U^sp (c > 1), plus the scalar relation u^cr = m*u^sb.
struct CrossRegimeReport {
    bool holds;            // all entry identities within tolerance
    double max_l_dev;
    double max_u_dev;      // or max column-1/elsewhere dev for Cholesky
    double m;              // 1+2*c*pi, or (1+2*c*pi)/c for c > 1 (LU report)
    double scalar_dev;     // deviation of the m-scaling (LU) / v-scaling (Cholesky)
    bool natural_powers;   // false when run as a general-tau probe
};

/// allow_general permits probing non-natural powers (expected to fail);
/// otherwise non-natural parameters throw NaturalPowersOnlyError.
CrossRegimeReport cross_lu_relation(const ModelParams& params,
                                    bool allow_general = false,
                                    double tolerance = 1e-10);
CrossRegimeReport cross_cholesky_relation(const ModelParams& params,
                                          bool allow_general = false,
                                          double tolerance = 1e-10);

/// True when params describe the vector of natural increasing powers.
bool is_natural_powers(const ModelParams& params);

}  // namespace rgg
