#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "rgg/errors.hpp"
#include "rgg/rgg_sim.hpp"

using namespace rgg;

namespace {

constexpr double kPi = std::numbers::pi;

bool edge_less(const Edge& a, const Edge& b) {
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
}

bool same_edges(std::vector<Edge> a, std::vector<Edge> b) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end(), edge_less);
    std::sort(b.begin(), b.end(), edge_less);
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].i != b[k].i || a[k].j != b[k].j || a[k].length != b[k].length)
            return false;
    return true;
}

PointCloud cloud_from(const std::vector<std::pair<double, double>>& pts) {
    PointCloud c;
    c.d = 2;
    c.axes.assign(2, {});
    for (auto [x, y] : pts) {
        c.axes[0].push_back(x);
        c.axes[1].push_back(y);
    }
    return c;
}

WindowSpec torus_window() { return {2, 1.0, BoundaryMode::Torus}; }
WindowSpec hard_window() { return {2, 1.0, BoundaryMode::HardWindow}; }

}  // namespace

TEST_CASE("split-mix stream is deterministic") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SplitMix64 c(43);
    CHECK(SplitMix64(42).next() != c.next());
}

TEST_CASE("Poisson sampler matches its first two moments") {
    for (const double mean : {5.0, 100.0, 2000.0}) {
        SplitMix64 rng(7);
        const int draws = 10000;
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double k = static_cast<double>(sample_poisson_count(mean, rng));
            s1 += k;
            s2 += k * k;
        }
        const double m = s1 / draws;
        const double v = (s2 - draws * m * m) / (draws - 1);
        // 3-sigma bands for the sample mean and sample variance
        CHECK(std::fabs(m - mean) <= 3.0 * std::sqrt(mean / draws));
        const double var_of_var = (mean + 2.0 * mean * mean) / draws;
        CHECK(std::fabs(v - mean) <= 3.0 * std::sqrt(var_of_var));
    }
}

TEST_CASE("point sampling is reproducible and stays inside the window") {
    const WindowSpec w = torus_window();
    const PointCloud a = sample_poisson(200.0, w, 99);
    const PointCloud b = sample_poisson(200.0, w, 99);
    CHECK(a.count() == b.count());
    CHECK(a.axes == b.axes);
    for (int k = 0; k < 2; ++k)
        for (double x : a.axes[k]) {
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
        }
    CHECK(sample_poisson(200.0, w, 100).axes != a.axes);
}

TEST_CASE("an edge at distance exactly delta is included") {
    const PointCloud c = cloud_from({{0.25, 0.5}, {0.5, 0.5}});
    const auto edges = enumerate_edges(c, 0.25, hard_window());
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].length == 0.25);
    CHECK(enumerate_edges(c, 0.2499, hard_window()).empty());
}

TEST_CASE("torus distance wraps around the boundary") {
    const PointCloud c = cloud_from({{0.05, 0.5}, {0.95, 0.5}});
    CHECK(enumerate_edges(c, 0.15, torus_window()).size() == 1);
    CHECK(enumerate_edges(c, 0.15, hard_window()).empty());
}

TEST_CASE("torus mode rejects oversized delta") {
    const PointCloud c = cloud_from({{0.1, 0.1}, {0.2, 0.2}});
    CHECK_THROWS_AS(enumerate_edges(c, 0.4, torus_window()), TorusDeltaTooLargeError);
}

TEST_CASE("single and empty clouds yield no edges") {
    CHECK(enumerate_edges(cloud_from({{0.5, 0.5}}), 0.1, torus_window()).empty());
    CHECK(enumerate_edges(cloud_from({}), 0.1, torus_window()).empty());
}

TEST_CASE("cell list agrees exactly with the brute-force scan") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const double t = 100.0 + 12.0 * seed;
        const double delta = 0.02 + 0.01 * (seed % 8);
        for (const WindowSpec& w : {torus_window(), hard_window()}) {
            const PointCloud c = sample_poisson(t, w, seed);
            CHECK(same_edges(enumerate_edges(c, delta, w, KernelKind::Scalar),
                             enumerate_edges_bruteforce(c, delta, w)));
        }
    }
}

TEST_CASE("vector and scalar kernels are bit-identical") {
    if (!avx2_available()) return;
    // direct kernel comparison on raw candidate arrays
    SplitMix64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> xs(37 + rep), ys(37 + rep);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = rng.uniform();
            ys[i] = rng.uniform();
        }
        const double qx = rng.uniform(), qy = rng.uniform();
        const double delta2 = 0.05 + 0.05 * (rep % 4);
        for (bool torus : {false, true}) {
            std::vector<PairHit> scalar_hits, avx_hits;
            pair_kernel_2d_scalar(qx, qy, xs.data(), ys.data(), xs.size(), delta2,
                                  1.0, torus, scalar_hits);
            pair_kernel_2d_avx2(qx, qy, xs.data(), ys.data(), xs.size(), delta2, 1.0,
                                torus, avx_hits);
            REQUIRE(scalar_hits.size() == avx_hits.size());
            for (std::size_t k = 0; k < scalar_hits.size(); ++k) {
                CHECK(scalar_hits[k].index == avx_hits[k].index);
                CHECK(scalar_hits[k].dist2 == avx_hits[k].dist2);
            }
        }
    }
    // end-to-end through the cell list
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        const PointCloud c = sample_poisson(600.0, torus_window(), seed);
        CHECK(same_edges(enumerate_edges(c, 0.05, torus_window(), KernelKind::Scalar),
                         enumerate_edges(c, 0.05, torus_window(), KernelKind::Avx2)));
    }
}

TEST_CASE("length powers match a naive double sum over ordered pairs") {
    const WindowSpec w = torus_window();
    const std::vector<double> taus{0.0, 0.5, 1.0, 2.0};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PointCloud c = sample_poisson(250.0, w, 300 + seed);
        const double delta = 0.06;
        const auto edges = enumerate_edges(c, delta, w);
        const std::vector<double> fast = length_power(edges, taus, 2);
        // half the sum over ordered pairs
        const std::size_t n = c.count();
        std::vector<double> naive(taus.size(), 0.0);
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
            CHECK(fast[k] ==
                  doctest::Approx(naive[k]).epsilon(1e-12));
        // the zero power counts edges exactly
        CHECK(fast[0] == static_cast<double>(edges.size()));
    }
}

TEST_CASE("zero-length edges trip negative powers only") {
    const PointCloud c = cloud_from({{0.5, 0.5}, {0.5, 0.5}});
    const auto edges = enumerate_edges(c, 0.1, hard_window());
    REQUIRE(edges.size() == 1);
    CHECK(length_power(edges, {0.0, 1.0}, 2)[0] == 1.0);
    CHECK_THROWS_AS(length_power(edges, {-0.5, 1.0}, 2), ZeroLengthEdgeError);
}

TEST_CASE("normalization picks the larger denominator") {
    ModelParams p(2, {0.0, 1.0}, 1.0, RegimeSpec::subcritical());
    const std::vector<double> raw{10.0, 20.0};
    const std::vector<double> center{4.0, 8.0};
    // subcritical-style point: t*delta^d = 0.1 < 1, so t*delta^(tau+d/2) wins
    const double t = 1000.0, delta = 0.01;
    const std::vector<double> z = normalize(raw, t, delta, p, center);
    CHECK(z[0] == doctest::Approx(6.0 / (t * delta)).epsilon(1e-14));
    CHECK(z[1] == doctest::Approx(12.0 / (t * delta * delta)).epsilon(1e-14));
    // supercritical-style point: t*delta^d large, t^(3/2)*delta^(tau+d) wins
    const double t2 = 10000.0, delta2 = 0.1;
    const std::vector<double> z2 = normalize(raw, t2, delta2, p, center);
    CHECK(z2[0] ==
          doctest::Approx(6.0 / (std::pow(t2, 1.5) * delta2 * delta2)).epsilon(1e-14));
    // centered input maps to zero
    const std::vector<double> z3 = normalize(raw, t, delta, p, raw);
    CHECK(z3[0] == 0.0);
    CHECK(z3[1] == 0.0);
}

TEST_CASE("torus edge-count mean matches the analytic leading order") {
    ModelParams p(2, {0.0}, 1.0, RegimeSpec::subcritical());
    const WindowSpec w = torus_window();
    const double t = 300.0, delta = 0.05;
    double acc = 0.0;
    const int reps = 60;
    for (int rep = 0; rep < reps; ++rep) {
        const PointCloud c = sample_poisson(t, w, mix_seed(777, rep));
        acc += static_cast<double>(enumerate_edges(c, delta, w).size());
    }
    const double expected = analytic_mean(t, delta, p)[0];  // (t^2/2)*pi*delta^2
    CHECK(expected == doctest::Approx(0.5 * t * t * kPi * delta * delta));
    CHECK(acc / reps == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("experiment config JSON round trip and validation") {
    ExperimentConfig config;
    config.params = ModelParams(2, {0.0, 1.0}, 1.0, RegimeSpec::critical(1.0));
    config.window = torus_window();
    config.schedule = {{1000.0, 0.03}, {2000.0, 0.02}};
    config.replications = 16;
    config.base_seed = 5;
    const ExperimentConfig back = ExperimentConfig::from_json(config.to_json());
    CHECK(back.schedule.size() == 2);
    CHECK(back.schedule[1].t == 2000.0);
    CHECK(back.replications == 16);
    CHECK(back.base_seed == 5);

    // parametric schedule: delta = kappa * t^(-alpha)
    nlohmann::json j = config.to_json();
    j["schedule"] = {{"kappa", 1.0}, {"alpha", 0.5}, {"t_values", {100.0, 400.0}}};
    const ExperimentConfig par = ExperimentConfig::from_json(j);
    CHECK(par.schedule[0].delta == doctest::Approx(0.1));
    CHECK(par.schedule[1].delta == doctest::Approx(0.05));

    // volume mismatch is rejected
    ExperimentConfig bad = config;
    bad.window.side = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("replication runs are deterministic and thread-count independent") {
    ExperimentConfig config;
    config.params = ModelParams(2, {0.0, 1.0}, 1.0, RegimeSpec::critical(1.0));
    config.window = torus_window();
    config.schedule = {{400.0, 0.05}};
    config.replications = 12;
    config.base_seed = 11;

    setenv("RGG_SPECTRA_THREADS", "1", 1);
    const auto serial = run_replications(config, 0);
    setenv("RGG_SPECTRA_THREADS", "4", 1);
    const auto parallel = run_replications(config, 0);
    unsetenv("RGG_SPECTRA_THREADS");
    CHECK(serial == parallel);
    CHECK(run_replications(config, 0) == serial);
}

TEST_CASE("covariance estimate on degenerate and known samples") {
    // identical samples: zero covariance
    const std::vector<std::vector<double>> same(5, {1.0, 2.0});
    const CovarianceEstimate z = estimate_covariance(same, 1.0, 1.0);
    CHECK(z.cov.max_abs() <= 1e-15);

    // two samples: cov = outer difference / 2
    const std::vector<std::vector<double>> two{{0.0, 0.0}, {2.0, 4.0}};
    const CovarianceEstimate e = estimate_covariance(two, 1.0, 1.0);
    CHECK(e.mean[0] == doctest::Approx(1.0));
    CHECK(e.cov(0, 0) == doctest::Approx(2.0));
    CHECK(e.cov(0, 1) == doctest::Approx(4.0));
    CHECK(e.cov(1, 1) == doctest::Approx(8.0));
}

TEST_CASE("diagnostics validate regime and power shape") {
    ExperimentConfig config;
    config.params = ModelParams(2, {0.0, 1.0}, 1.0, RegimeSpec::critical(1.0));
    config.window = torus_window();
    config.schedule = {{200.0, 0.07}};
    config.replications = 8;
    CHECK_THROWS_AS(check_difference_convergence(config), WrongRegimeError);

    ExperimentConfig sup = config;
    sup.params = ModelParams(2, {0.0, 1.0}, 1.0, RegimeSpec::supercritical());
    CHECK_THROWS_AS(check_noise_decomposition(sup), WrongRegimeError);

    ExperimentConfig shape = config;
    shape.params = ModelParams(2, {0.5, 1.0}, 1.0, RegimeSpec::critical(1.0));
    CHECK_THROWS_AS(check_noise_decomposition(shape), TauVectorShapeError);
}
