#include "rgg/dossier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>

#include "rgg/closed_forms.hpp"
#include "rgg/errors.hpp"
#include "rgg/matrix_core.hpp"

namespace rgg {

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::NotApplicable: return "n/a";
    }
    return "?";
}

CheckResult graded(std::string name, double residual, double tolerance,
                   std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.status = residual <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    r.residual = residual;
    r.tolerance = tolerance;
    r.detail = std::move(detail);
    return r;
}

CheckResult not_applicable(std::string name, std::string reason) {
    CheckResult r;
    r.name = std::move(name);
    r.status = CheckStatus::NotApplicable;
    r.detail = std::move(reason);
    return r;
}

bool is_sub(const ModelParams& p) { return p.regime.kind == RegimeKind::Subcritical; }
bool is_sup(const ModelParams& p) {
    return p.regime.kind == RegimeKind::Supercritical;
}

// conditioning estimate: ratio of the trace-bound bracket of the Cauchy part;
// tolerances for inverse/determinant comparisons scale with it
double cond_estimate(const ModelParams& p) {
    ModelParams sb = p;
    sb.regime = RegimeSpec::subcritical();
    const auto [lo, hi] = sb_eigen_bounds(sb);
    if (!(lo > 0.0) || !std::isfinite(hi / lo)) return 1e12;
    return std::max(1.0, hi / lo);
}

double rel_err(double value, double reference) {
    const double scale = std::max(std::fabs(reference),
                                  std::numeric_limits<double>::min());
    return std::fabs(value - reference) / scale;
}

std::vector<CheckSpec> make_registry() {
    std::vector<CheckSpec> reg;

    reg.push_back({"psd_min_eigenvalue", "all regimes", [](const ModelParams& p) {
        const CovarianceBundle b = build_sigma(p);
        const Spectrum s = jacobi_eigen(b.sigma);
        const double lmax = std::max(std::fabs(s.eigenvalues.back()),
                                     std::fabs(s.eigenvalues.front()));
        const double neg = std::max(0.0, -s.eigenvalues.front());
        CheckResult r = graded("psd_min_eigenvalue", neg, 1e-10 * lmax);
        if (!is_sup(p) && !(s.eigenvalues.front() > 1e-12 * lmax)) {
            r.status = CheckStatus::Fail;
            r.detail = "expected strictly positive spectrum";
        }
        return r;
    }});

    reg.push_back({"rank", "all regimes", [](const ModelParams& p) {
        const CovarianceBundle b = build_sigma(p);
        const std::size_t expected = is_sup(p) ? 1 : p.n();
        const std::size_t got = numerical_rank(b.sigma);
        CheckResult r = graded("rank", got == expected ? 0.0 : 1.0, 0.0,
                               "rank " + std::to_string(got) + ", expected " +
                                   std::to_string(expected));
        return r;
    }});

    reg.push_back({"eigengap", "subcritical and critical", [](const ModelParams& p) {
        if (is_sup(p))
            return not_applicable("eigengap", "rank-one spectrum is degenerate");
        if (p.n() < 2) return not_applicable("eigengap", "needs n >= 2");
        const Spectrum s = jacobi_eigen(build_sigma(p).sigma);
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < p.n(); ++i)
            gap = std::min(gap, s.eigenvalues[i] - s.eigenvalues[i - 1]);
        // probe only: distinctness holds on every sampled set so far
        CheckResult r = graded("eigengap", gap > 0.0 ? 0.0 : 1.0, 0.0,
                               "min gap " + std::to_string(gap));
        return r;
    }});

    // --- supercritical ---
    auto sup_only = [](const std::string& name,
                       const ModelParams& p) -> std::optional<CheckResult> {
        if (!is_sup(p)) return not_applicable(name, "supercritical only");
        if (p.n() < 2) return not_applicable(name, "needs n >= 2");
        return std::nullopt;
    };

    reg.push_back({"sp_spectrum_oracle", "supercritical, n >= 2",
                   [sup_only](const ModelParams& p) {
        if (auto na = sup_only("sp_spectrum_oracle", p)) return *na;
        const CovarianceBundle b = build_sigma(p);
        const SpSpectrum s = sp_spectrum(p);
        const Spectrum oracle = jacobi_eigen(b.sigma);
        double res = rel_err(s.lambda2, oracle.eigenvalues.back());
        for (std::size_t k = 0; k + 1 < p.n(); ++k)
            for (double v : mat_vec(b.sigma.as_matrix(), s.basis[k]))
                res = std::max(res, std::fabs(v) / b.sigma.max_abs());
        return graded("sp_spectrum_oracle", res, 1e-10);
    }});

    reg.push_back({"sp_schur_identity", "supercritical, n >= 2",
                   [sup_only](const ModelParams& p) {
        if (auto na = sup_only("sp_schur_identity", p)) return *na;
        const Factorization f = sp_schur(p);
        return graded("sp_schur_identity",
                      max_abs_diff(f.s * f.s_inv, Matrix::identity(p.n())), 1e-10);
    }});

    auto sp_recon = [sup_only](const std::string& name,
                               Factorization (*op)(const ModelParams&)) {
        return [sup_only, name, op](const ModelParams& p) {
            if (auto na = sup_only(name, p)) return *na;
            const double scale = build_sigma(p).sigma.max_abs();
            return graded(name, op(p).residual, 1e-9 * scale);
        };
    };
    reg.push_back({"sp_schur_reconstruction", "supercritical, n >= 2",
                   sp_recon("sp_schur_reconstruction", sp_schur)});
    reg.push_back({"sp_lu_reconstruction", "supercritical, n >= 2",
                   sp_recon("sp_lu_reconstruction", sp_lu)});
    reg.push_back({"sp_cholesky_reconstruction", "supercritical, n >= 2",
                   sp_recon("sp_cholesky_reconstruction", sp_cholesky)});
    reg.push_back({"sp_root_reconstruction", "supercritical, n >= 2",
                   sp_recon("sp_root_reconstruction", sp_root)});

    // --- subcritical ---
    reg.push_back({"sb_det_oracle", "subcritical", [](const ModelParams& p) {
        if (!is_sub(p)) return not_applicable("sb_det_oracle", "subcritical only");
        const double oracle = determinant(build_sigma(p).sigma.as_matrix());
        return graded("sb_det_oracle", rel_err(sb_det(p), oracle),
                      1e-8 * cond_estimate(p));
    }});

    reg.push_back({"sb_inverse_identity", "subcritical", [](const ModelParams& p) {
        if (!is_sub(p))
            return not_applicable("sb_inverse_identity", "subcritical only");
        const Matrix prod =
            build_sigma(p).sigma.as_matrix() * sb_inverse(p).as_matrix();
        return graded("sb_inverse_identity",
                      max_abs_diff(prod, Matrix::identity(p.n())),
                      1e-7 * cond_estimate(p));
    }});

    reg.push_back({"sb_charpoly_roots", "subcritical", [](const ModelParams& p) {
        if (!is_sub(p)) return not_applicable("sb_charpoly_roots", "subcritical only");
        const std::vector<double> coeffs = sb_charpoly(p);
        double max_coeff = 0.0;
        for (double c : coeffs) max_coeff = std::max(max_coeff, std::fabs(c));
        double res = 0.0;
        for (double l : jacobi_eigen(build_sigma(p).sigma).eigenvalues)
            res = std::max(res, std::fabs(eval_poly(coeffs, l)) / max_coeff);
        return graded("sb_charpoly_roots", res, 1e-7 * cond_estimate(p));
    }});

    reg.push_back({"sb_lu_reconstruction", "subcritical", [](const ModelParams& p) {
        if (!is_sub(p))
            return not_applicable("sb_lu_reconstruction", "subcritical only");
        return graded("sb_lu_reconstruction", sb_lu(p).residual,
                      1e-9 * build_sigma(p).sigma.max_abs());
    }});

    reg.push_back({"sb_cholesky_oracle", "subcritical", [](const ModelParams& p) {
        if (!is_sub(p))
            return not_applicable("sb_cholesky_oracle", "subcritical only");
        const CovarianceBundle b = build_sigma(p);
        const Factorization f = sb_cholesky(p);
        const double res = std::max(
            f.residual, max_abs_diff(f.g, cholesky_psd(b.sigma).g));
        return graded("sb_cholesky_oracle", res,
                      1e-8 * b.sigma.max_abs() * cond_estimate(p));
    }});

    reg.push_back({"sb_bounds_bracket", "subcritical", [](const ModelParams& p) {
        if (!is_sub(p)) return not_applicable("sb_bounds_bracket", "subcritical only");
        const auto [lo, hi] = sb_eigen_bounds(p);
        const Spectrum s = jacobi_eigen(build_sigma(p).sigma);
        double res = 0.0;
        for (double l : s.eigenvalues)
            res = std::max({res, lo - l, l - hi});
        CheckResult r = graded("sb_bounds_bracket", res, 1e-10 * std::fabs(hi));
        if (p.n() == 2) {
            // bracket is tight at n = 2
            const double tight = std::max(rel_err(lo, s.eigenvalues[0]),
                                          rel_err(hi, s.eigenvalues[1]));
            if (tight > 1e-10) {
                r.status = CheckStatus::Fail;
                r.detail = "n=2 tightness violated";
            }
        }
        return r;
    }});

    // --- critical ---
    auto crit_only = [](const std::string& name,
                        const ModelParams& p) -> std::optional<CheckResult> {
        if (!p.regime.is_critical()) return not_applicable(name, "critical only");
        return std::nullopt;
    };

    reg.push_back({"cr_det_oracle", "critical", [crit_only](const ModelParams& p) {
        if (auto na = crit_only("cr_det_oracle", p)) return *na;
        const double oracle = determinant(build_sigma(p).sigma.as_matrix());
        return graded("cr_det_oracle", rel_err(cr_det(p), oracle),
                      1e-8 * cond_estimate(p));
    }});

    reg.push_back({"cr_inverse_identity", "critical", [crit_only](const ModelParams& p) {
        if (auto na = crit_only("cr_inverse_identity", p)) return *na;
        const Matrix prod =
            build_sigma(p).sigma.as_matrix() * cr_inverse(p).as_matrix();
        return graded("cr_inverse_identity",
                      max_abs_diff(prod, Matrix::identity(p.n())),
                      1e-7 * cond_estimate(p));
    }});

    reg.push_back({"cr_charpoly_roots", "critical", [crit_only](const ModelParams& p) {
        if (auto na = crit_only("cr_charpoly_roots", p)) return *na;
        const std::vector<double> coeffs = cr_charpoly(p);
        double max_coeff = 0.0;
        for (double c : coeffs) max_coeff = std::max(max_coeff, std::fabs(c));
        double res = 0.0;
        for (double l : jacobi_eigen(build_sigma(p).sigma).eigenvalues)
            res = std::max(res, std::fabs(eval_poly(coeffs, l)) / max_coeff);
        return graded("cr_charpoly_roots", res, 1e-7 * cond_estimate(p));
    }});

    reg.push_back({"cr_bounds_bracket", "critical", [crit_only](const ModelParams& p) {
        if (auto na = crit_only("cr_bounds_bracket", p)) return *na;
        const CrEigenBounds b = cr_eigen_bounds(p);
        const Spectrum s = jacobi_eigen(build_sigma(p).sigma);
        double res = 0.0;
        for (std::size_t i = 0; i < p.n(); ++i) {
            const double l = s.eigenvalues[i];
            res = std::max({res, b.lower - l, l - b.upper,
                            b.per_index[i].lower - l, l - b.per_index[i].upper});
        }
        return graded("cr_bounds_bracket", res, 1e-10 * std::fabs(b.upper),
                      b.oracle_assisted ? "per-index via oracle eigenvalues" : "");
    }});

    auto natural_only = [](const std::string& name,
                           const ModelParams& p) -> std::optional<CheckResult> {
        if (!p.regime.is_critical()) return not_applicable(name, "critical only");
        if (!is_natural_powers(p))
            return not_applicable(name, "natural increasing powers (d=2) only");
        return std::nullopt;
    };

    reg.push_back({"cr_natural_lu", "critical natural powers",
                   [natural_only](const ModelParams& p) {
        if (auto na = natural_only("cr_natural_lu", p)) return *na;
        return graded("cr_natural_lu", cr_lu_natural(p).residual,
                      1e-9 * build_sigma(p).sigma.max_abs());
    }});

    reg.push_back({"cr_natural_cholesky", "critical natural powers",
                   [natural_only](const ModelParams& p) {
        if (auto na = natural_only("cr_natural_cholesky", p)) return *na;
        return graded("cr_natural_cholesky", cr_cholesky_natural(p).residual,
                      1e-9 * build_sigma(p).sigma.max_abs());
    }});

    reg.push_back({"cr_natural_det", "critical natural powers",
                   [natural_only](const ModelParams& p) {
        if (auto na = natural_only("cr_natural_det", p)) return *na;
        const double oracle = determinant(build_sigma(p).sigma.as_matrix());
        return graded("cr_natural_det", rel_err(cr_det_natural(p), oracle),
                      1e-8 * cond_estimate(p));
    }});

    reg.push_back({"cross_lu_relation", "critical natural powers",
                   [natural_only](const ModelParams& p) {
        if (auto na = natural_only("cross_lu_relation", p)) return *na;
        const CrossRegimeReport r = cross_lu_relation(p);
        return graded("cross_lu_relation",
                      std::max({r.max_l_dev, r.max_u_dev, r.scalar_dev}), 1e-10);
    }});

    reg.push_back({"cross_cholesky_relation", "critical natural powers",
                   [natural_only](const ModelParams& p) {
        if (auto na = natural_only("cross_cholesky_relation", p)) return *na;
        const CrossRegimeReport r = cross_cholesky_relation(p);
        return graded("cross_cholesky_relation",
                      std::max(r.max_u_dev, r.scalar_dev), 1e-10);
    }});

    return reg;
}

}  // namespace

const std::vector<CheckSpec>& check_registry() {
    static const std::vector<CheckSpec> registry = make_registry();
    return registry;
}

std::vector<std::string> list_checks() {
    std::vector<std::string> names;
    for (const CheckSpec& c : check_registry()) names.push_back(c.name);
    return names;
}

bool Dossier::all_passed() const {
    for (const CheckResult& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

nlohmann::json Dossier::to_json() const {
    nlohmann::json out;
    out["params"] = params.to_json();
    out["matrices"] = matrices;
    out["scalars"] = scalars;
    nlohmann::json list = nlohmann::json::array();
    for (const CheckResult& c : checks)
        list.push_back({{"name", c.name},
                        {"status", status_name(c.status)},
                        {"residual", c.residual},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}});
    out["checks"] = list;
    out["all_passed"] = all_passed();
    return out;
}

std::string Dossier::to_text() const {
    std::string out = "regime " + to_string(params.regime.kind) + ", n = " +
                      std::to_string(params.n()) + "\n";
    char buf[256];
    for (const CheckResult& c : checks) {
        std::snprintf(buf, sizeof(buf), "  %-28s %-5s %12.3e / %-12.3e %s\n",
                      c.name.c_str(), status_name(c.status), c.residual, c.tolerance,
                      c.detail.c_str());
        out += buf;
    }
    out += all_passed() ? "  all checks passed\n" : "  FAILURES PRESENT\n";
    return out;
}

Dossier build_dossier(const ModelParams& params) {
    params.validate();
    Dossier d;
    d.params = params;

    const CovarianceBundle b = build_sigma(params);
    d.matrices["sigma"] = b.sigma.as_matrix().to_json();
    d.matrices["sigma_sb"] = b.sigma_sb.as_matrix().to_json();
    d.matrices["sigma_sp"] = b.sigma_sp.as_matrix().to_json();
    const Spectrum spec = jacobi_eigen(b.sigma);
    d.scalars["trace"] = b.sigma.trace();
    d.scalars["oracle_eigenvalues"] = spec.eigenvalues;
    d.scalars["oracle_determinant"] = determinant(b.sigma.as_matrix());
    d.scalars["numerical_rank"] = numerical_rank(b.sigma);

    for (const CheckSpec& spec_entry : check_registry()) {
        try {
            d.checks.push_back(spec_entry.run(params));
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = spec_entry.name;
            r.status = CheckStatus::Fail;
            r.residual = std::numeric_limits<double>::infinity();
            r.detail = std::string("exception: ") + e.what();
            d.checks.push_back(std::move(r));
        }
    }
    return d;
}

}  // namespace rgg
