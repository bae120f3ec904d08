#include "rgg/rgg_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "rgg/errors.hpp"

namespace rgg {

std::string to_string(BoundaryMode mode) {
    return mode == BoundaryMode::Torus ? "torus" : "hard_window";
}

BoundaryMode boundary_mode_from_string(const std::string& s) {
    if (s == "torus") return BoundaryMode::Torus;
    if (s == "hard_window") return BoundaryMode::HardWindow;
    throw std::invalid_argument("unknown boundary mode: " + s);
}

double WindowSpec::volume() const { return std::pow(side, d); }

void WindowSpec::validate() const {
    if (d < 1) throw std::invalid_argument("window dimension must be >= 1");
    if (!(side > 0.0)) throw std::invalid_argument("window side must be positive");
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    SplitMix64 rng(base ^ (0xD1B54A32D192ED03ull * (stream + 1)));
    rng.next();
    return rng.next();
}

std::uint64_t sample_poisson_count(double mean, SplitMix64& rng) {
    if (!(mean > 0.0)) throw std::invalid_argument("Poisson mean must be positive");
    if (mean < 30.0) {
        // multiplicative inversion
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double p = rng.uniform();
        while (p > limit) {
            ++k;
            p *= rng.uniform();
        }
        return k;
    }
    // transformed rejection with squeeze (PTRS)
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    while (true) {
        const double u = rng.uniform() - 0.5;
        double v = rng.uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_mean - mean - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

PointCloud sample_poisson(double t, const WindowSpec& window, std::uint64_t seed) {
    window.validate();
    if (!(t > 0.0)) throw std::invalid_argument("intensity t must be positive");
    SplitMix64 rng(seed);
    const std::uint64_t n = sample_poisson_count(t * window.volume(), rng);
    PointCloud cloud;
    cloud.d = window.d;
    cloud.t = t;
    cloud.seed = seed;
    cloud.axes.assign(window.d, std::vector<double>(n));
    for (std::uint64_t i = 0; i < n; ++i)
        for (int k = 0; k < window.d; ++k)
            cloud.axes[k][i] = rng.uniform() * window.side;
    return cloud;
}

namespace {

double pair_dist2(const PointCloud& cloud, std::size_t i, std::size_t j, double side,
                  bool torus) {
    double sum = 0.0;
    for (int k = 0; k < cloud.d; ++k) {
        double dx = cloud.axes[k][i] - cloud.axes[k][j];
        if (torus) {
            dx = std::fabs(dx);
            dx = std::min(dx, side - dx);
        }
        sum += dx * dx;
    }
    return sum;
}

void check_edge_inputs(const PointCloud& cloud, double delta,
                       const WindowSpec& window) {
    window.validate();
    if (cloud.d != window.d)
        throw std::invalid_argument("cloud/window dimension mismatch");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (window.boundary == BoundaryMode::Torus && delta > window.side / 3.0)
        throw TorusDeltaTooLargeError(
            "torus mode requires delta <= side/3 for a unique wraparound "
            "representative");
}

}  // namespace

std::vector<Edge> enumerate_edges_bruteforce(const PointCloud& cloud, double delta,
                                             const WindowSpec& window) {
    check_edge_inputs(cloud, delta, window);
    const bool torus = window.boundary == BoundaryMode::Torus;
    const double delta2 = delta * delta;
    const std::size_t n = cloud.count();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = pair_dist2(cloud, i, j, window.side, torus);
            if (d2 <= delta2)
                edges.push_back({static_cast<std::uint32_t>(i),
                                 static_cast<std::uint32_t>(j), std::sqrt(d2)});
        }
    return edges;
}

std::vector<Edge> enumerate_edges(const PointCloud& cloud, double delta,
                                  const WindowSpec& window, KernelKind kernel) {
    check_edge_inputs(cloud, delta, window);
    const bool torus = window.boundary == BoundaryMode::Torus;
    const std::size_t n = cloud.count();
    if (n < 2) return {};
    const int d = cloud.d;

    // grid resolution: cell side >= delta, total cells bounded by ~4N
    std::size_t m = static_cast<std::size_t>(std::floor(window.side / delta));
    if (m < 1) m = 1;
    while (m > 1 && std::pow(static_cast<double>(m), d) > 4.0 * n + 64.0) --m;
    if (m == 1 || (torus && m < 3))
        return enumerate_edges_bruteforce(cloud, delta, window);

    const double cell_side = window.side / static_cast<double>(m);
    std::size_t ncells = 1;
    for (int k = 0; k < d; ++k) ncells *= m;

    // cell id per point, then counting sort into contiguous per-cell ranges
    std::vector<std::size_t> cell_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t id = 0;
        for (int k = d - 1; k >= 0; --k) {
            std::size_t c = static_cast<std::size_t>(cloud.axes[k][i] / cell_side);
            if (c >= m) c = m - 1;
            id = id * m + c;
        }
        cell_of[i] = id;
    }
    std::vector<std::size_t> start(ncells + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++start[cell_of[i] + 1];
    for (std::size_t c = 0; c < ncells; ++c) start[c + 1] += start[c];
    std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
    std::vector<std::uint32_t> orig(n);
    std::vector<std::vector<double>> sorted(d, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pos = cursor[cell_of[i]]++;
        orig[pos] = static_cast<std::uint32_t>(i);
        for (int k = 0; k < d; ++k) sorted[k][pos] = cloud.axes[k][i];
    }

    // half neighborhood: offsets in {-1,0,1}^d whose first nonzero entry is +1
    std::vector<std::vector<int>> offsets;
    std::vector<int> off(d, -1);
    while (true) {
        bool positive = false;
        for (int k = 0; k < d; ++k) {
            if (off[k] != 0) {
                positive = off[k] > 0;
                break;
            }
        }
        if (positive) offsets.push_back(off);
        int k = 0;
        for (; k < d; ++k) {
            if (off[k] < 1) {
                ++off[k];
                break;
            }
            off[k] = -1;
        }
        if (k == d) break;
    }

    const double delta2 = delta * delta;
    const PairKernel2d kernel2d = d == 2 ? select_pair_kernel_2d(kernel) : nullptr;
    std::vector<Edge> edges;
    std::vector<PairHit> hits;

    auto scan = [&](std::size_t q, std::size_t lo, std::size_t hi) {
        if (lo >= hi) return;
        hits.clear();
        if (d == 2) {
            kernel2d(sorted[0][q], sorted[1][q], sorted[0].data() + lo,
                     sorted[1].data() + lo, hi - lo, delta2, window.side, torus, hits);
        } else {
            for (std::size_t p = lo; p < hi; ++p) {
                double sum = 0.0;
                for (int k = 0; k < d; ++k) {
                    double dx = sorted[k][q] - sorted[k][p];
                    if (torus) {
                        dx = std::fabs(dx);
                        dx = std::min(dx, window.side - dx);
                    }
                    sum += dx * dx;
                }
                if (sum <= delta2)
                    hits.push_back({static_cast<std::uint32_t>(p - lo), sum});
            }
        }
        for (const PairHit& h : hits) {
            std::uint32_t a = orig[q], b = orig[lo + h.index];
            if (a > b) std::swap(a, b);
            edges.push_back({a, b, std::sqrt(h.dist2)});
        }
    };

    std::vector<std::size_t> coord(d);
    for (std::size_t c = 0; c < ncells; ++c) {
        const std::size_t lo = start[c], hi = start[c + 1];
        if (lo == hi) continue;
        {
            std::size_t rest = c;
            for (int k = 0; k < d; ++k) {
                coord[k] = rest % m;
                rest /= m;
            }
        }
        // pairs inside the cell
        for (std::size_t q = lo; q + 1 < hi; ++q) scan(q, q + 1, hi);
        // pairs against each half-neighborhood cell
        for (const std::vector<int>& o : offsets) {
            std::size_t nc = 0;
            bool in_range = true;
            for (int k = d - 1; k >= 0; --k) {
                long long v = static_cast<long long>(coord[k]) + o[k];
                if (torus) {
                    v = (v + static_cast<long long>(m)) % static_cast<long long>(m);
                } else if (v < 0 || v >= static_cast<long long>(m)) {
                    in_range = false;
                    break;
                }
                nc = nc * m + static_cast<std::size_t>(v);
            }
            if (!in_range) continue;
            for (std::size_t q = lo; q < hi; ++q) scan(q, start[nc], start[nc + 1]);
        }
    }
    return edges;
}

std::vector<double> length_power(const std::vector<Edge>& edges,
                                 const std::vector<double>& taus, int d) {
    bool negative = false;
    for (double tau : taus) {
        if (!(tau > -0.5 * d))
            throw std::invalid_argument("tau must exceed -d/2");
        if (tau < 0.0) negative = true;
    }
    std::vector<double> out(taus.size(), 0.0);
    for (const Edge& e : edges) {
        if (e.length == 0.0 && negative)
            throw ZeroLengthEdgeError("zero-length edge with a negative power; "
                                      "duplicated points?");
        for (std::size_t i = 0; i < taus.size(); ++i)
            out[i] += std::pow(e.length, taus[i]);
    }
    return out;
}

std::vector<double> normalize(const std::vector<double>& raw, double t, double delta,
                              const ModelParams& params,
                              const std::vector<double>& center) {
    if (raw.size() != params.n() || center.size() != params.n())
        throw std::invalid_argument("raw/center length mismatch");
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double tau = params.taus[i];
        const double denom =
            std::max(t * std::pow(delta, tau + 0.5 * params.d),
                     std::pow(t, 1.5) * std::pow(delta, tau + params.d));
        out[i] = (raw[i] - center[i]) / denom;
    }
    return out;
}

std::vector<double> analytic_mean(double t, double delta, const ModelParams& params) {
    const DerivedScalars s = derive_scalars(params);
    std::vector<double> out(params.n());
    for (std::size_t i = 0; i < params.n(); ++i)
        out[i] = 0.5 * t * t * params.volume * params.d * s.kappa_d *
                 std::pow(delta, s.a[i]) / s.a[i];
    return out;
}

void ExperimentConfig::validate() const {
    params.validate();
    window.validate();
    if (window.d != params.d)
        throw std::invalid_argument("window/model dimension mismatch");
    if (std::fabs(window.volume() - params.volume) >
        1e-9 * std::max(1.0, params.volume))
        throw std::invalid_argument("window volume does not match model volume");
    if (schedule.empty()) throw std::invalid_argument("schedule must be non-empty");
    for (const SchedulePoint& p : schedule)
        if (!(p.t > 0.0) || !(p.delta > 0.0))
            throw std::invalid_argument("schedule entries must be positive");
    if (replications < 2)
        throw std::invalid_argument("covariance estimation needs replications >= 2");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json sched = nlohmann::json::array();
    for (const SchedulePoint& p : schedule)
        sched.push_back({{"t", p.t}, {"delta", p.delta}});
    return {{"params", params.to_json()},
            {"window",
             {{"d", window.d},
              {"side", window.side},
              {"boundary", to_string(window.boundary)}}},
            {"schedule", sched},
            {"replications", replications},
            {"base_seed", base_seed},
            {"centering", centering == Centering::EmpiricalMean
                              ? "empirical_mean"
                              : "analytic_leading_order"},
            {"kernel", kernel == KernelKind::Scalar  ? "scalar"
                       : kernel == KernelKind::Avx2 ? "avx2"
                                                    : "auto"}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    config.params = ModelParams::from_json(j.at("params"));
    const auto& w = j.at("window");
    config.window.d = w.at("d").get<int>();
    config.window.side = w.at("side").get<double>();
    config.window.boundary =
        boundary_mode_from_string(w.at("boundary").get<std::string>());
    const auto& sched = j.at("schedule");
    if (sched.is_array()) {
        for (const auto& p : sched)
            config.schedule.push_back(
                {p.at("t").get<double>(), p.at("delta").get<double>()});
    } else {
        // parametric schedule delta = kappa * t^(-alpha)
        const double kappa = sched.at("kappa").get<double>();
        const double alpha = sched.at("alpha").get<double>();
        for (double t : sched.at("t_values").get<std::vector<double>>())
            config.schedule.push_back({t, kappa * std::pow(t, -alpha)});
    }
    config.replications = j.at("replications").get<std::size_t>();
    if (j.contains("base_seed"))
        config.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("centering")) {
        const std::string c = j.at("centering").get<std::string>();
        if (c == "empirical_mean") {
            config.centering = Centering::EmpiricalMean;
        } else if (c == "analytic_leading_order") {
            config.centering = Centering::AnalyticLeadingOrder;
        } else {
            throw std::invalid_argument("unknown centering: " + c);
        }
    }
    if (j.contains("kernel")) {
        const std::string k = j.at("kernel").get<std::string>();
        if (k == "scalar") {
            config.kernel = KernelKind::Scalar;
        } else if (k == "avx2") {
            config.kernel = KernelKind::Avx2;
        } else if (k == "auto") {
            config.kernel = KernelKind::Auto;
        } else {
            throw std::invalid_argument("unknown kernel: " + k);
        }
    }
    config.validate();
    return config;
}

std::size_t thread_budget() {
    std::size_t budget = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RGG_SPECTRA_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed > 0)
            budget = std::min(budget, static_cast<std::size_t>(parsed));
    }
    return budget;
}

std::vector<std::vector<double>> run_replications(const ExperimentConfig& config,
                                                  std::size_t point_index) {
    config.validate();
    if (point_index >= config.schedule.size())
        throw std::invalid_argument("schedule point index out of range");
    const SchedulePoint point = config.schedule[point_index];
    const std::size_t r = config.replications;
    const std::uint64_t point_seed = mix_seed(config.base_seed, point_index);

    std::vector<std::vector<double>> raw(r);
    auto worker = [&](std::size_t first, std::size_t stride) {
        for (std::size_t rep = first; rep < r; rep += stride) {
            const std::uint64_t seed = mix_seed(point_seed, rep);
            const PointCloud cloud = sample_poisson(point.t, config.window, seed);
            const std::vector<Edge> edges =
                enumerate_edges(cloud, point.delta, config.window, config.kernel);
            raw[rep] = length_power(edges, config.params.taus, config.params.d);
        }
    };
    const std::size_t workers = std::min(thread_budget(), r);
    if (workers <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker, w, workers);
        for (std::thread& th : pool) th.join();
    }

    std::vector<double> center(config.params.n(), 0.0);
    if (config.centering == Centering::EmpiricalMean) {
        for (const std::vector<double>& row : raw)
            for (std::size_t i = 0; i < center.size(); ++i) center[i] += row[i];
        for (double& c : center) c /= static_cast<double>(r);
    } else {
        if (config.window.boundary != BoundaryMode::Torus)
            throw std::invalid_argument(
                "analytic centering is exact only in torus mode");
        center = analytic_mean(point.t, point.delta, config.params);
    }
    std::vector<std::vector<double>> normalized(r);
    for (std::size_t rep = 0; rep < r; ++rep)
        normalized[rep] =
            normalize(raw[rep], point.t, point.delta, config.params, center);
    return normalized;
}

CovarianceEstimate estimate_covariance(const std::vector<std::vector<double>>& samples,
                                       double t, double delta) {
    const std::size_t r = samples.size();
    if (r < 2) throw std::invalid_argument("need at least two samples");
    const std::size_t n = samples.front().size();

    std::vector<double> s1(n, 0.0);
    Matrix s2(n);
    for (const std::vector<double>& z : samples) {
        for (std::size_t i = 0; i < n; ++i) {
            s1[i] += z[i];
            for (std::size_t j = 0; j < n; ++j) s2(i, j) += z[i] * z[j];
        }
    }
    CovarianceEstimate est;
    est.t = t;
    est.delta = delta;
    est.r = r;
    est.mean.resize(n);
    for (std::size_t i = 0; i < n; ++i) est.mean[i] = s1[i] / static_cast<double>(r);
    Matrix cov(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cov(i, j) = (s2(i, j) - r * est.mean[i] * est.mean[j]) /
                        static_cast<double>(r - 1);
    est.cov = SymMatrix(cov);

    // leave-one-out covariance estimates for the jackknife
    Matrix sum(n), sumsq(n);
    std::vector<Matrix> loo(r, Matrix(n));
    const double rm1 = static_cast<double>(r - 1);
    for (std::size_t rep = 0; rep < r; ++rep) {
        const std::vector<double>& z = samples[rep];
        for (std::size_t i = 0; i < n; ++i) {
            const double mi = (s1[i] - z[i]) / rm1;
            for (std::size_t j = 0; j < n; ++j) {
                const double mj = (s1[j] - z[j]) / rm1;
                const double cij =
                    (s2(i, j) - z[i] * z[j] - rm1 * mi * mj) / (rm1 - 1.0);
                loo[rep](i, j) = cij;
                sum(i, j) += cij;
            }
        }
    }
    Matrix se(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double bar = sum(i, j) / static_cast<double>(r);
            double acc = 0.0;
            for (std::size_t rep = 0; rep < r; ++rep) {
                const double dev = loo[rep](i, j) - bar;
                acc += dev * dev;
            }
            se(i, j) = std::sqrt(rm1 / static_cast<double>(r) * acc);
        }
    est.se = SymMatrix(se);
    return est;
}

std::vector<CovarianceEstimate> run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<CovarianceEstimate> out;
    out.reserve(config.schedule.size());
    for (std::size_t p = 0; p < config.schedule.size(); ++p) {
        const std::vector<std::vector<double>> samples = run_replications(config, p);
        out.push_back(estimate_covariance(samples, config.schedule[p].t,
                                          config.schedule[p].delta));
    }
    return out;
}

namespace {

double sample_variance(const std::vector<double>& v) {
    const double r = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= r;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / (r - 1.0);
}

// jackknife standard error of the sample variance
double variance_se(const std::vector<double>& v) {
    const std::size_t r = v.size();
    double s1 = 0.0, s2 = 0.0;
    for (double x : v) {
        s1 += x;
        s2 += x * x;
    }
    const double rm1 = static_cast<double>(r - 1);
    std::vector<double> loo(r);
    double bar = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        const double m = (s1 - v[i]) / rm1;
        loo[i] = (s2 - v[i] * v[i] - rm1 * m * m) / (rm1 - 1.0);
        bar += loo[i];
    }
    bar /= static_cast<double>(r);
    double acc = 0.0;
    for (double x : loo) acc += (x - bar) * (x - bar);
    return std::sqrt(rm1 / static_cast<double>(r) * acc);
}

}  // namespace

ConvergenceSeries check_difference_convergence(const ExperimentConfig& config) {
    config.validate();
    if (config.params.regime.kind != RegimeKind::Supercritical)
        throw WrongRegimeError(
            "difference convergence requires a supercritical regime");
    if (config.params.n() != 2)
        throw TauVectorShapeError("difference convergence needs exactly two powers");
    const DerivedScalars s = derive_scalars(config.params);

    ConvergenceSeries series;
    for (std::size_t p = 0; p < config.schedule.size(); ++p) {
        const std::vector<std::vector<double>> samples = run_replications(config, p);
        std::vector<double> diff(samples.size());
        for (std::size_t rep = 0; rep < samples.size(); ++rep)
            diff[rep] = s.a[0] * samples[rep][0] - s.a[1] * samples[rep][1];
        series.t.push_back(config.schedule[p].t);
        series.variance.push_back(sample_variance(diff));
    }
    // least-squares slope of log(variance) against log(t)
    const std::size_t k = series.t.size();
    if (k >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double x = std::log(series.t[i]);
            const double y = std::log(series.variance[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        series.loglog_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    }
    return series;
}

NoiseDecomposition check_noise_decomposition(const ExperimentConfig& config) {
    config.validate();
    if (config.params.regime.kind == RegimeKind::Supercritical)
        throw WrongRegimeError(
            "noise decomposition applies to subcritical and critical regimes");
    if (config.params.n() != 2 || config.params.taus[0] != 0.0)
        throw TauVectorShapeError("noise decomposition needs powers (0, tau)");

    const DerivedScalars s = derive_scalars(config.params);
    const double tau = config.params.taus[1];
    const double a = s.a[1], x = s.x[1];
    const double c_eff =
        std::max(config.params.regime.is_critical() ? config.params.regime.c : 0.0,
                 1.0);

    const std::vector<std::vector<double>> samples =
        run_replications(config, config.schedule.size() - 1);
    const std::size_t r = samples.size();
    std::vector<double> rho(r), z0(r);
    for (std::size_t rep = 0; rep < r; ++rep) {
        z0[rep] = samples[rep][0];
        rho[rep] = samples[rep][1] - (config.params.d / a) * z0[rep];
    }
    NoiseDecomposition out;
    out.residual_variance = sample_variance(rho);
    out.residual_variance_se = variance_se(rho);
    out.target_variance = tau * tau * config.params.volume * config.params.d *
                          s.kappa_d / (a * a * 4.0 * x * c_eff);
    // Pearson correlation
    double mr = 0.0, mz = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        mr += rho[i];
        mz += z0[i];
    }
    mr /= static_cast<double>(r);
    mz /= static_cast<double>(r);
    double srz = 0.0, srr = 0.0, szz = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        srz += (rho[i] - mr) * (z0[i] - mz);
        srr += (rho[i] - mr) * (rho[i] - mr);
        szz += (z0[i] - mz) * (z0[i] - mz);
    }
    out.correlation = srz / std::sqrt(srr * szz);
    return out;
}

}  // namespace rgg
