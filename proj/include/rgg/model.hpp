#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rgg {

/// Intensity regime of the schedule limit t*delta_t^d.
enum class RegimeKind { Subcritical, CriticalLow, CriticalHigh, Supercritical };

struct RegimeSpec {
    RegimeKind kind = RegimeKind::Subcritical;
    double c = 0.0;  // only meaningful for the critical kinds

    static RegimeSpec subcritical() { return {RegimeKind::Subcritical, 0.0}; }
    static RegimeSpec supercritical() { return {RegimeKind::Supercritical, 0.0}; }
    /// Picks CriticalLow for c in (0,1] and CriticalHigh for c > 1.
    static RegimeSpec critical(double c);

    bool is_critical() const {
        return kind == RegimeKind::CriticalLow || kind == RegimeKind::CriticalHigh;
    }
    void validate() const;
};

std::string to_string(RegimeKind kind);
RegimeKind regime_kind_from_string(const std::string& s);

/// Model parameters: dimension, strictly increasing powers tau_1 < ... < tau_n
/// with tau_1 > -d/2, window volume, and the regime.
struct ModelParams {
    int d = 2;
    std::vector<double> taus;
    double volume = 1.0;
    RegimeSpec regime;

    ModelParams() = default;
    ModelParams(int d, std::vector<double> taus, double volume, RegimeSpec regime);

    std::size_t n() const { return taus.size(); }
    void validate() const;

    nlohmann::json to_json() const;
    static ModelParams from_json(const nlohmann::json& j);
};

/// Scalars derived from ModelParams used by every closed form:
/// a_i = tau_i + d, x_i = tau_i + d/2, kappa_d, and b = sum_k prod_{l!=k} a_l^2.
struct DerivedScalars {
    std::vector<double> a;
    std::vector<double> x;
    double kappa_d = 0.0;
    double b = 0.0;
};

/// Volume of the d-dimensional unit ball, pi^{d/2}/Gamma(d/2+1).
double unit_ball_volume(int d);

DerivedScalars derive_scalars(const ModelParams& params);

/// The value t*delta^d plus, for the schedule delta_t = kappa*t^{-alpha}, the
/// limiting regime: alpha > 1/d subcritical, alpha = 1/d critical with
/// c = kappa^d, alpha < 1/d supercritical.
struct ScheduleClassification {
    double t_delta_d;  // t * delta^d at the given point
    RegimeSpec limit;  // limiting regime of the parametric schedule
};

ScheduleClassification regime_of_schedule(double t, double delta, int d,
                                          double kappa, double alpha);

/// Classification from a single (t, delta) point only; returns t*delta^d.
double intensity_product(double t, double delta, int d);

}  // namespace rgg
