#include "rgg/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rgg/errors.hpp"

namespace rgg {

Matrix Factorization::permutation_matrix() const {
    const std::size_t n = perm.size();
    Matrix p(n);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
    return p;
}

double Factorization::reconstruction_error(const Matrix& a) const {
    switch (kind) {
        case FactorizationKind::LU:
            return max_abs_diff(permutation_matrix() * a, l * u);
        case FactorizationKind::Cholesky:
            return max_abs_diff(a, g * g.transpose());
        case FactorizationKind::Schur:
            return max_abs_diff(a, s * d * s_inv);
        case FactorizationKind::Root:
            return max_abs_diff(a, b * b);
    }
    return 0.0;
}

Factorization lu_pivoted(const Matrix& a) {
    const std::size_t n = a.order();
    Matrix work = a;
    Factorization f;
    f.kind = FactorizationKind::LU;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    f.l = Matrix::identity(n);

    for (std::size_t k = 0; k < n; ++k) {
        // partial pivoting: max absolute entry in column k at or below row k
        std::size_t pivot_row = k;
        double best = std::fabs(work(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(work(i, k)) > best) {
                best = std::fabs(work(i, k));
                pivot_row = i;
            }
        }
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(work(k, j), work(pivot_row, j));
            for (std::size_t j = 0; j < k; ++j) std::swap(f.l(k, j), f.l(pivot_row, j));
            std::swap(f.perm[k], f.perm[pivot_row]);
        }
        const double pivot = work(k, k);
        if (pivot == 0.0) continue;  // singular column: leave a zero row in U
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = work(i, k) / pivot;
            f.l(i, k) = factor;
            work(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) work(i, j) -= factor * work(k, j);
        }
    }
    f.u = Matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) f.u(i, j) = work(i, j);
    f.residual = f.reconstruction_error(a);
    return f;
}

Factorization cholesky_psd(const SymMatrix& a, double pivot_tol) {
    const std::size_t n = a.order();
    const double tol = pivot_tol * a.max_abs();
    Factorization f;
    f.kind = FactorizationKind::Cholesky;
    f.g = Matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= f.g(j, k) * f.g(j, k);
        if (diag < -tol)
            throw NotPsdError("cholesky_psd: diagonal pivot " + std::to_string(diag) +
                              " below -tol at column " + std::to_string(j));
        const double gjj = diag > 0.0 ? std::sqrt(diag) : 0.0;
        f.g(j, j) = gjj;
        for (std::size_t i = j + 1; i < n; ++i) {
            if (gjj == 0.0) {
                f.g(i, j) = 0.0;
                continue;
            }
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= f.g(i, k) * f.g(j, k);
            f.g(i, j) = s / gjj;
        }
    }
    f.residual = f.reconstruction_error(a.as_matrix());
    return f;
}

Spectrum jacobi_eigen(const SymMatrix& a, double offdiag_tol, int max_sweeps) {
    const std::size_t n = a.order();
    Matrix m = a.as_matrix();
    Matrix v = Matrix::identity(n);
    const double target = offdiag_tol * a.as_matrix().frobenius_norm();

    auto offdiag_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += m(i, j) * m(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (offdiag_norm() > target) {
        if (++sweep > max_sweeps)
            throw NoConvergenceError("jacobi_eigen: no convergence after " +
                                     std::to_string(max_sweeps) + " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m(i, i) < m(j, j); });
    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        out.eigenvalues[col] = m(order[col], order[col]);
        for (std::size_t row = 0; row < n; ++row)
            out.eigenvectors(row, col) = v(row, order[col]);
    }
    return out;
}

double determinant(const Matrix& a) {
    Factorization f = lu_pivoted(a);
    double det = 1.0;
    for (std::size_t i = 0; i < a.order(); ++i) det *= f.u(i, i);
    // permutation sign
    std::vector<std::size_t> p = f.perm;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            det = -det;
        }
    }
    return det;
}

std::vector<double> lu_solve(const Factorization& lu, const std::vector<double>& rhs) {
    const std::size_t n = rhs.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[lu.perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu.l(i, j) * y[j];
        y[i] = s;
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu.u(ii, j) * x[j];
        if (lu.u(ii, ii) == 0.0) throw SingularError("lu_solve: zero pivot");
        x[ii] = s / lu.u(ii, ii);
    }
    return x;
}

Matrix inverse(const Matrix& a) {
    const std::size_t n = a.order();
    Factorization f = lu_pivoted(a);
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(f.u(i, i)) < tol::singular_det)
            throw SingularError("inverse: matrix is singular");
    Matrix inv(n);
    std::vector<double> e(n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        e.assign(n, 0.0);
        e[col] = 1.0;
        const std::vector<double> x = lu_solve(f, e);
        for (std::size_t row = 0; row < n; ++row) inv(row, col) = x[row];
    }
    return inv;
}

std::vector<double> char_poly(const SymMatrix& a) {
    const std::size_t n = a.order();
    const Spectrum spec = jacobi_eigen(a);
    // det(A - lambda I) = prod (lambda_i - lambda); build ascending-power coeffs
    std::vector<double> coeffs{1.0};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k] += coeffs[k] * spec.eigenvalues[i];  // constant factor lambda_i
            next[k + 1] -= coeffs[k];                    // times (-lambda)
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

double eval_poly(const std::vector<double>& coeffs, double lambda) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * lambda + coeffs[k];
    return v;
}

std::pair<double, double> wolkowicz_bounds(const SymMatrix& a) {
    const std::size_t n = a.order();
    if (n == 1) return {a(0, 0), a(0, 0)};  // documented convention for n = 1
    const double m = a.trace() / static_cast<double>(n);
    const Matrix sq = a.as_matrix() * a.as_matrix();
    double s2 = sq.trace() / static_cast<double>(n) - m * m;
    if (s2 < 0.0) s2 = 0.0;
    const double s = std::sqrt(s2);
    const double root = std::sqrt(static_cast<double>(n - 1));
    const double upper = m + s * root;
    const double lower = determinant(a.as_matrix()) / std::pow(m + s / root, n - 1);
    return {lower, upper};
}

std::size_t numerical_rank(const SymMatrix& a, double rel_tol) {
    const Spectrum spec = jacobi_eigen(a);
    double lambda_max = 0.0;
    for (double l : spec.eigenvalues) lambda_max = std::max(lambda_max, std::fabs(l));
    if (lambda_max == 0.0) return 0;
    std::size_t rank = 0;
    for (double l : spec.eigenvalues)
        if (l > rel_tol * lambda_max) ++rank;
    return rank;
}

}  // namespace rgg
