// Monte Carlo acceptance gate: empirical covariance of the normalized length
// power vector against the closed-form limits in all three regimes, plus the
// variance-collapse and noise-decomposition diagnostics. Prints one line per
// criterion; exits nonzero on any failure. Runtime is a few minutes on one core.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "rgg/closed_forms.hpp"
#include "rgg/model.hpp"
#include "rgg/rgg_sim.hpp"

using namespace rgg;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kBaseSeed = 424242;

int failures = 0;

void report(const char* name, bool ok, double seconds, const std::string& detail) {
    std::printf("%s %s (%.1f s) %s\n", name, ok ? "PASS" : "FAIL", seconds,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

ExperimentConfig make_config(RegimeSpec regime, double alpha,
                             std::vector<double> t_values, std::size_t reps) {
    ExperimentConfig cfg;
    cfg.params = ModelParams(2, {0.0, 1.0}, 1.0, regime);
    cfg.window = WindowSpec{2, 1.0, BoundaryMode::Torus};
    for (double t : t_values)
        cfg.schedule.push_back({t, std::pow(t, -alpha)});
    cfg.replications = reps;
    cfg.base_seed = kBaseSeed;
    cfg.centering = Centering::EmpiricalMean;
    return cfg;
}

struct RegimeOutcome {
    bool bands_ok = true;
    int improved = 0;          // of the 4 entries, counting (0,1) and (1,0)
    double worst_rel = 0.0;
};

RegimeOutcome compare_regime(const ExperimentConfig& cfg, const SymMatrix& theory) {
    RegimeOutcome out;
    const std::vector<CovarianceEstimate> est = run_experiment(cfg);
    for (std::size_t p = 0; p < est.size(); ++p) {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                const double err = std::fabs(est[p].cov(i, j) - theory(i, j));
                const double band =
                    std::max(0.15 * std::fabs(theory(i, j)), 3.0 * est[p].se(i, j));
                if (err > band) out.bands_ok = false;
                out.worst_rel =
                    std::max(out.worst_rel, err / std::fabs(theory(i, j)));
            }
    }
    if (est.size() == 2) {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                const double e0 = std::fabs(est[0].cov(i, j) - theory(i, j));
                const double e1 = std::fabs(est[1].cov(i, j) - theory(i, j));
                if (e1 <= e0) ++out.improved;
            }
    }
    return out;
}

// ---------------------------------------------------------------- A6
void criterion_a6() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    char buf[256];

    // (a) combined regime, c = 1, with the error-improvement clause
    {
        ExperimentConfig cfg =
            make_config(RegimeSpec::critical(1.0), 0.5, {2000.0, 8000.0}, 400);
        const RegimeOutcome r = compare_regime(cfg, build_sigma(cfg.params).sigma);
        const bool pass = r.bands_ok && r.improved >= 3;
        std::snprintf(buf, sizeof(buf),
                      "critical: worst rel %.3f, improved %d/4%s", r.worst_rel,
                      r.improved, pass ? "" : " [FAIL]");
        ok = ok && pass;
        std::printf("  A6a %s\n", buf);
    }
    // (b) sparse and dense regimes, band check only
    {
        ExperimentConfig cfg =
            make_config(RegimeSpec::subcritical(), 1.0, {2000.0, 8000.0}, 400);
        ModelParams sb = cfg.params;
        const RegimeOutcome r = compare_regime(cfg, build_sigma(sb).sigma);
        ok = ok && r.bands_ok;
        std::printf("  A6b subcritical: worst rel %.3f%s\n", r.worst_rel,
                    r.bands_ok ? "" : " [FAIL]");
    }
    {
        ExperimentConfig cfg =
            make_config(RegimeSpec::supercritical(), 0.25, {2000.0, 8000.0}, 400);
        const RegimeOutcome r = compare_regime(cfg, build_sigma(cfg.params).sigma);
        ok = ok && r.bands_ok;
        std::printf("  A6b supercritical: worst rel %.3f%s\n", r.worst_rel,
                    r.bands_ok ? "" : " [FAIL]");
    }
    report("A6", ok, seconds_since(t0),
           "empirical covariance bands in all three regimes");
}

// ---------------------------------------------------------------- A7
void criterion_a7() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;

    // (a) variance of the weighted difference collapses along the schedule
    {
        ExperimentConfig cfg = make_config(RegimeSpec::supercritical(), 0.25,
                                           {1000.0, 4000.0, 16000.0}, 300);
        const ConvergenceSeries series = check_difference_convergence(cfg);
        bool decreasing = true;
        for (std::size_t k = 1; k < series.variance.size(); ++k)
            decreasing = decreasing && series.variance[k] < series.variance[k - 1];
        ok = ok && decreasing;
        std::printf("  A7a var(D_t) = %.4f, %.4f, %.4f (slope %.2f)%s\n",
                    series.variance[0], series.variance[1], series.variance[2],
                    series.loglog_slope, decreasing ? "" : " [FAIL]");
    }
    // (b) noise decomposition at c = 1: residual variance near pi/36,
    // residual uncorrelated with the edge-count component
    {
        ExperimentConfig cfg =
            make_config(RegimeSpec::critical(1.0), 0.5, {8000.0}, 400);
        const NoiseDecomposition nd = check_noise_decomposition(cfg);
        const double target = kPi / 36.0;
        const double band =
            std::max(0.20 * target, 3.0 * nd.residual_variance_se);
        const bool var_ok = std::fabs(nd.residual_variance - target) <= band;
        const bool corr_ok = std::fabs(nd.correlation) < 0.1;
        ok = ok && var_ok && corr_ok;
        std::printf(
            "  A7b residual var %.5f (target %.5f, band %.5f)%s, corr %.4f%s\n",
            nd.residual_variance, target, band, var_ok ? "" : " [FAIL]",
            nd.correlation, corr_ok ? "" : " [FAIL]");
    }
    report("A7", ok, seconds_since(t0),
           "variance collapse and noise decomposition diagnostics");
}

}  // namespace

int main() {
    criterion_a6();
    criterion_a7();
    std::printf("%s\n", failures == 0 ? "ACCEPTANCE(MC): ALL PASS"
                                      : "ACCEPTANCE(MC): FAILURES");
    return failures == 0 ? 0 : 1;
}
