// Fast acceptance gate: exactness of the worked examples, the randomized
// oracle sweep, bound validity, cross-regime identities, and simulator
// micro-oracles. Prints one line per criterion; exits nonzero on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "rgg/closed_forms.hpp"
#include "rgg/matrix_core.hpp"
#include "rgg/model.hpp"
#include "rgg/rgg_sim.hpp"

using namespace rgg;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(const char* name, bool ok, double ms, const std::string& detail) {
    std::printf("%s %s (%.2f ms) %s\n", name, ok ? "PASS" : "FAIL", ms,
                detail.c_str());
    if (!ok) ++failures;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

bool rel_ok(double value, double reference, double tol) {
    return std::fabs(value - reference) <= tol * std::fabs(reference);
}

// ---------------------------------------------------------------- A1
void criterion_a1() {
    const auto t0 = std::chrono::steady_clock::now();
    ModelParams p(2, {0.0, 1.0, 2.0}, 1.0, RegimeSpec::supercritical());
    bool ok = true;
    std::string detail = "rank-one worked example";

    const CovarianceBundle b = build_sigma(p);
    const double s = 4.0 * kPi * kPi;
    const double sigma_expected[3][3] = {{s / 4, s / 6, s / 8},
                                         {s / 6, s / 9, s / 12},
                                         {s / 8, s / 12, s / 16}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            ok = ok && rel_ok(b.sigma(i, j), sigma_expected[i][j], 1e-12);

    const Factorization lu = sp_lu(p);
    const double l_expected[3] = {1.0, 4.0 / 6.0, 4.0 / 8.0};
    const double u_expected[3] = {s / 4.0, s / 6.0, s / 8.0};
    for (int i = 0; i < 3; ++i) {
        ok = ok && rel_ok(lu.l(i, 0), l_expected[i], 1e-12);
        ok = ok && rel_ok(lu.u(0, i), u_expected[i], 1e-12);
    }
    for (int i = 1; i < 3; ++i)
        for (int j = i; j < 3; ++j) ok = ok && lu.u(i, j) == 0.0;

    const Factorization ch = sp_cholesky(p);
    const double g_expected[3] = {2.0 * kPi / 2.0, 2.0 * kPi / 3.0, 2.0 * kPi / 4.0};
    for (int i = 0; i < 3; ++i) ok = ok && rel_ok(ch.g(i, 0), g_expected[i], 1e-12);

    // matrix root: entries carry sqrt(244) denominators (b = 244); the overall
    // factor is 2*pi so that the square reproduces the matrix above
    const DerivedScalars ds = derive_scalars(p);
    ok = ok && ds.b == 244.0;
    const Factorization rt = sp_root(p);
    const double root244 = std::sqrt(244.0);
    const double frac[3][3] = {{6.0, 4.0, 3.0}, {4.0, 8.0 / 3.0, 2.0},
                               {3.0, 2.0, 3.0 / 2.0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            ok = ok && rel_ok(rt.b(i, j), 2.0 * kPi * frac[i][j] / root244, 1e-12);
    ok = ok && max_abs_diff(rt.b * rt.b, b.sigma.as_matrix()) <= 1e-12 * s;

    const double ms = ms_since(t0);
    if (ms >= 1.0) detail += " [over 1 ms budget]";
    report("A1", ok && ms < 1.0, ms, detail);
}

// ---------------------------------------------------------------- A2
void criterion_a2() {
    const auto t0 = std::chrono::steady_clock::now();
    ModelParams p(2, {0.0, 1.0}, 1.0, RegimeSpec::critical(1.0));
    bool ok = true;

    ok = ok && rel_ok(cr_det(p), kPi * kPi * kPi / 36.0 + kPi * kPi / 72.0, 1e-12);

    const Spectrum s = jacobi_eigen(build_sigma(p).sigma);
    const double disc =
        std::sqrt(52.0 * 52.0 * kPi * kPi + 2664.0 * kPi + 657.0);
    const double l1 = kPi / 72.0 * (52.0 * kPi + 27.0 - disc);
    const double l2 = kPi / 72.0 * (52.0 * kPi + 27.0 + disc);
    ok = ok && rel_ok(s.eigenvalues[0], l1, 1e-10);
    ok = ok && rel_ok(s.eigenvalues[1], l2, 1e-10);

    const CrEigenBounds bounds = cr_eigen_bounds(p);
    for (int i = 0; i < 2; ++i) {
        const double l = s.eigenvalues[i];
        ok = ok && l >= bounds.per_index[i].lower - 1e-12;
        ok = ok && l <= bounds.per_index[i].upper + 1e-12;
        const double dist = std::min(l - bounds.per_index[i].lower,
                                     bounds.per_index[i].upper - l);
        ok = ok && dist <= 1e-3;
    }
    const double ms = ms_since(t0);
    report("A2", ok && ms < 10.0, ms,
           "combined-regime determinant, eigenvalues, per-index brackets");
}

// ---------------------------------------------------------------- A3 + A4
struct SweepResult {
    bool oracle_ok = true;
    bool bounds_ok = true;
    bool tight_ok = true;
    int sets = 0;
    double worst_rel = 0.0;
};

SweepResult run_sweep() {
    SweepResult out;
    std::mt19937_64 gen(20260823);
    std::uniform_int_distribution<int> pick_n(2, 8);
    std::uniform_int_distribution<int> pick_d(1, 3);
    std::uniform_real_distribution<double> pick_gap(0.25, 1.2);
    std::uniform_real_distribution<double> pick_vol(0.5, 3.0);
    std::uniform_real_distribution<double> pick_c(0.2, 3.0);

    for (int set = 0; set < 200; ++set) {
        const int n = pick_n(gen);
        const int d = pick_d(gen);
        std::vector<double> taus(n);
        std::uniform_real_distribution<double> start(-0.4 * d, 1.0);
        taus[0] = start(gen);
        for (int i = 1; i < n; ++i) taus[i] = taus[i - 1] + pick_gap(gen);
        RegimeSpec regime;
        switch (set % 3) {
            case 0: regime = RegimeSpec::subcritical(); break;
            case 1: regime = RegimeSpec::critical(pick_c(gen)); break;
            default: regime = RegimeSpec::supercritical(); break;
        }
        ModelParams p(d, taus, pick_vol(gen), regime);
        ++out.sets;

        const CovarianceBundle b = build_sigma(p);
        const double norm = b.sigma.max_abs();

        // conditioning scale from the trace-bound bracket of the Cauchy part
        ModelParams sb = p;
        sb.regime = RegimeSpec::subcritical();
        const auto [w_lo, w_hi] = sb_eigen_bounds(sb);
        const double cond = w_lo > 0.0 ? std::max(1.0, w_hi / w_lo) : 1e12;
        const double tol = 1e-8 * cond;

        auto track = [&](double rel) {
            out.worst_rel = std::max(out.worst_rel, rel / cond);
            if (!(rel <= tol)) out.oracle_ok = false;
        };
        auto recon = [&](double residual) {
            if (!(residual <= 1e-9 * norm)) out.oracle_ok = false;
        };

        const Spectrum oracle = jacobi_eigen(b.sigma);

        if (regime.kind == RegimeKind::Subcritical) {
            const double det_oracle = determinant(b.sigma.as_matrix());
            track(std::fabs(sb_det(p) - det_oracle) / std::fabs(det_oracle));
            const Matrix prod = b.sigma.as_matrix() * sb_inverse(p).as_matrix();
            track(max_abs_diff(prod, Matrix::identity(p.n())));
            const std::vector<double> coeffs = sb_charpoly(p);
            double max_coeff = 0.0;
            for (double c : coeffs) max_coeff = std::max(max_coeff, std::fabs(c));
            for (double l : oracle.eigenvalues)
                track(std::fabs(eval_poly(coeffs, l)) / max_coeff);
            recon(sb_lu(p).residual);
            recon(sb_cholesky(p).residual);

            // A4: bracket and n = 2 tightness
            const auto [lo, hi] = sb_eigen_bounds(p);
            for (double l : oracle.eigenvalues)
                if (l < lo - 1e-10 * hi || l > hi + 1e-10 * hi) out.bounds_ok = false;
            if (p.n() == 2) {
                if (!rel_ok(lo, oracle.eigenvalues[0], 1e-10)) out.tight_ok = false;
                if (!rel_ok(hi, oracle.eigenvalues[1], 1e-10)) out.tight_ok = false;
            }
        } else if (regime.is_critical()) {
            const double det_oracle = determinant(b.sigma.as_matrix());
            track(std::fabs(cr_det(p) - det_oracle) / std::fabs(det_oracle));
            const Matrix prod = b.sigma.as_matrix() * cr_inverse(p).as_matrix();
            track(max_abs_diff(prod, Matrix::identity(p.n())));
            const std::vector<double> coeffs = cr_charpoly(p);
            double max_coeff = 0.0;
            for (double c : coeffs) max_coeff = std::max(max_coeff, std::fabs(c));
            for (double l : oracle.eigenvalues)
                track(std::fabs(eval_poly(coeffs, l)) / max_coeff);

            // A4: global bracket
            const CrEigenBounds bounds = cr_eigen_bounds(p);
            for (std::size_t i = 0; i < p.n(); ++i) {
                const double l = oracle.eigenvalues[i];
                if (l < bounds.lower - 1e-10 * bounds.upper ||
                    l > bounds.upper + 1e-10 * bounds.upper)
                    out.bounds_ok = false;
            }
        } else {
            track(std::fabs(sp_spectrum(p).lambda2 - oracle.eigenvalues.back()) /
                  oracle.eigenvalues.back());
            const Factorization schur = sp_schur(p);
            track(max_abs_diff(schur.s * schur.s_inv, Matrix::identity(p.n())));
            recon(schur.residual);
            recon(sp_lu(p).residual);
            recon(sp_cholesky(p).residual);
            recon(sp_root(p).residual);
        }
    }
    return out;
}

// ---------------------------------------------------------------- A5
void criterion_a5() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const double c : {0.3, 1.0, 2.5}) {
        for (int n = 2; n <= 8; ++n) {
            std::vector<double> taus(n);
            for (int i = 0; i < n; ++i) taus[i] = i;
            ModelParams p(2, taus, 1.0, RegimeSpec::critical(c));
            ok = ok && cross_lu_relation(p).holds;
            ok = ok && cross_cholesky_relation(p).holds;
        }
    }
    // the probe with powers 1,3,5 must violate the relation (expected failure)
    ModelParams probe(2, {1.0, 3.0, 5.0}, 1.0, RegimeSpec::critical(1.0));
    const CrossRegimeReport r = cross_lu_relation(probe, /*allow_general=*/true);
    const bool probe_fails = !r.holds && r.max_u_dev > 1e-3;
    ok = ok && probe_fails;
    report("A5", ok, ms_since(t0),
           std::string("cross-regime identities; probe violation ") +
               (probe_fails ? "confirmed" : "NOT OBSERVED"));
}

// ---------------------------------------------------------------- A8
void criterion_a8() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail = "cell list, length powers, Poisson moments";

    // cell list vs brute force, 50 clouds, both boundary modes
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        for (const BoundaryMode mode : {BoundaryMode::Torus, BoundaryMode::HardWindow}) {
            const WindowSpec w{2, 1.0, mode};
            const PointCloud c = sample_poisson(120.0 + 10.0 * seed, w, seed);
            const double delta = 0.02 + 0.012 * (seed % 7);
            auto fast = enumerate_edges(c, delta, w);
            auto slow = enumerate_edges_bruteforce(c, delta, w);
            auto key = [](const Edge& a, const Edge& b) {
                return a.i != b.i ? a.i < b.i : a.j < b.j;
            };
            std::sort(fast.begin(), fast.end(), key);
            std::sort(slow.begin(), slow.end(), key);
            if (fast.size() != slow.size()) { ok = false; continue; }
            for (std::size_t k = 0; k < fast.size(); ++k)
                if (fast[k].i != slow[k].i || fast[k].j != slow[k].j ||
                    fast[k].length != slow[k].length)
                    ok = false;
        }
    }

    // length powers against the naive ordered double sum with the 1/2 factor
    {
        const WindowSpec w{2, 1.0, BoundaryMode::Torus};
        const std::vector<double> taus{0.0, 0.5, 1.0, 2.0};
        const PointCloud c = sample_poisson(300.0, w, 77);
        const double delta = 0.06;
        const std::vector<double> fast =
            length_power(enumerate_edges(c, delta, w), taus, 2);
        std::vector<double> naive(taus.size(), 0.0);
        const std::size_t n = c.count();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                double dx = std::fabs(c.axes[0][i] - c.axes[0][j]);
                double dy = std::fabs(c.axes[1][i] - c.axes[1][j]);
                dx = std::min(dx, 1.0 - dx);
                dy = std::min(dy, 1.0 - dy);
                const double len = std::sqrt(dx * dx + dy * dy);
                if (len <= delta)
                    for (std::size_t k = 0; k < taus.size(); ++k)
                        naive[k] += 0.5 * std::pow(len, taus[k]);
            }
        for (std::size_t k = 0; k < taus.size(); ++k)
            ok = ok && std::fabs(fast[k] - naive[k]) <=
                           1e-12 * std::max(1.0, std::fabs(naive[k]));
    }

    // Poisson mean and variance inside 3-sigma bands over 1e4 draws
    for (const double mean : {8.0, 150.0}) {
        SplitMix64 rng(123);
        const int draws = 10000;
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double k = static_cast<double>(sample_poisson_count(mean, rng));
            s1 += k;
            s2 += k * k;
        }
        const double m = s1 / draws;
        const double v = (s2 - draws * m * m) / (draws - 1);
        ok = ok && std::fabs(m - mean) <= 3.0 * std::sqrt(mean / draws);
        ok = ok && std::fabs(v - mean) <=
                       3.0 * std::sqrt((mean + 2.0 * mean * mean) / draws);
    }

    report("A8", ok, ms_since(t0), detail);
}

}  // namespace

int main() {
    criterion_a1();
    criterion_a2();

    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult sweep = run_sweep();
    const double sweep_ms = ms_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d parameter sets, worst scaled rel %.2e",
                  sweep.sets, sweep.worst_rel);
    report("A3", sweep.oracle_ok && sweep_ms < 60000.0, sweep_ms, buf);
    report("A4", sweep.bounds_ok && sweep.tight_ok, 0.0,
           "bracket validity on the sweep; n=2 tightness");

    criterion_a5();
    criterion_a8();

    std::printf("%s\n", failures == 0 ? "ACCEPTANCE(FAST): ALL PASS"
                                      : "ACCEPTANCE(FAST): FAILURES");
    return failures == 0 ? 0 : 1;
}
