#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgg/matrix.hpp"
#include "rgg/model.hpp"
#include "rgg/pair_kernels.hpp"

namespace rgg {

enum class BoundaryMode { HardWindow, Torus };

std::string to_string(BoundaryMode mode);
BoundaryMode boundary_mode_from_string(const std::string& s);

/// Hypercube sampling window [0, side]^d.
struct WindowSpec {
    int d = 2;
    double side = 1.0;
    BoundaryMode boundary = BoundaryMode::Torus;

    double volume() const;
    void validate() const;
};

/// One Poisson realization; coordinates stored per axis (axes[k][i] is the
/// k-th coordinate of point i) so neighbor scans run over contiguous arrays.
struct PointCloud {
    int d = 2;
    double t = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> axes;

    std::size_t count() const { return axes.empty() ? 0 : axes[0].size(); }
};

struct Edge {
    std::uint32_t i, j;  // original point indices, i < j
    double length;
};

/// Counter-style generator: cheap to seed, every replication gets its own
/// stream derived from (base_seed, stream index).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform();  // [0, 1)

  private:
    std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

/// Poisson(mean) via inversion (small mean) or PTRS rejection (large mean).
std::uint64_t sample_poisson_count(double mean, SplitMix64& rng);

PointCloud sample_poisson(double t, const WindowSpec& window, std::uint64_t seed);

/// All unordered pairs at distance <= delta, each exactly once, via a uniform
/// cell grid (cell side >= delta, 3^d neighborhood scan).
std::vector<Edge> enumerate_edges(const PointCloud& cloud, double delta,
                                  const WindowSpec& window,
                                  KernelKind kernel = KernelKind::Auto);

/// O(N^2) reference used to validate the cell list.
std::vector<Edge> enumerate_edges_bruteforce(const PointCloud& cloud, double delta,
                                             const WindowSpec& window);

/// Component i is the sum of length^taus[i] over the edges.
std::vector<double> length_power(const std::vector<Edge>& edges,
                                 const std::vector<double>& taus, int d);

/// Componentwise (raw - center) / max{t*delta^(tau+d/2), t^(3/2)*delta^(tau+d)}.
std::vector<double> normalize(const std::vector<double>& raw, double t, double delta,
                              const ModelParams& params,
                              const std::vector<double>& center);

/// Leading-order mean of the raw functional on the torus:
/// (t^2/2) * V * d*kappa_d * delta^(tau+d) / (tau+d) per component.
std::vector<double> analytic_mean(double t, double delta, const ModelParams& params);

enum class Centering { EmpiricalMean, AnalyticLeadingOrder };

struct SchedulePoint {
    double t;
    double delta;
};

struct ExperimentConfig {
    ModelParams params;
    WindowSpec window;
    std::vector<SchedulePoint> schedule;
    std::size_t replications = 2;
    std::uint64_t base_seed = 1;
    Centering centering = Centering::EmpiricalMean;
    KernelKind kernel = KernelKind::Auto;

    void validate() const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct CovarianceEstimate {
    double t = 0.0;
    double delta = 0.0;
    std::size_t r = 0;
    std::vector<double> mean;  // of the normalized samples
    SymMatrix cov;             // unbiased, divisor r-1
    SymMatrix se;              // jackknife standard error per entry
};

/// Worker cap: min(hardware threads, RGG_SPECTRA_THREADS if set).
std::size_t thread_budget();

/// Normalized sample vectors for one schedule point, replication r seeded from
/// mix_seed(base, point_index, r); row r is replication r. Deterministic and
/// independent of the worker count.
std::vector<std::vector<double>> run_replications(const ExperimentConfig& config,
                                                  std::size_t point_index);

std::vector<CovarianceEstimate> run_experiment(const ExperimentConfig& config);

CovarianceEstimate estimate_covariance(const std::vector<std::vector<double>>& samples,
                                       double t, double delta);

struct ConvergenceSeries {
    std::vector<double> t;
    std::vector<double> variance;  // of a_1*z_1 - a_2*z_2 per schedule point
    double loglog_slope = 0.0;
};

/// Variance trace of the weighted difference D_t = a_1*z^(tau_1) - a_2*z^(tau_2)
/// along the schedule. Requires a supercritical regime and exactly two powers.
ConvergenceSeries check_difference_convergence(const ExperimentConfig& config);

struct NoiseDecomposition {
    double residual_variance = 0.0;
    double residual_variance_se = 0.0;  // jackknife
    double target_variance = 0.0;
    double correlation = 0.0;
};

/// Residual rho = z^(tau) - (d/a) z^(0) against its predicted variance
/// tau^2*V*d*kappa_d/(a^2*4x*max{c,1}). Requires powers (0, tau) and a
/// subcritical or critical regime; evaluated at the last schedule point.
NoiseDecomposition check_noise_decomposition(const ExperimentConfig& config);

}  // namespace rgg
