#include "rgg/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace rgg {

RegimeSpec RegimeSpec::critical(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("critical regime requires c > 0");
    RegimeSpec spec;
    spec.kind = c <= 1.0 ? RegimeKind::CriticalLow : RegimeKind::CriticalHigh;
    spec.c = c;
    return spec;
}

void RegimeSpec::validate() const {
    switch (kind) {
        case RegimeKind::CriticalLow:
            if (!(c > 0.0 && c <= 1.0))
                throw std::invalid_argument("CriticalLow requires c in (0,1]");
            break;
        case RegimeKind::CriticalHigh:
            if (!(c > 1.0)) throw std::invalid_argument("CriticalHigh requires c > 1");
            break;
        default:
            if (c != 0.0)
                throw std::invalid_argument("c is only meaningful for critical regimes");
            break;
    }
}

std::string to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::Subcritical: return "subcritical";
        case RegimeKind::CriticalLow: return "critical_low";
        case RegimeKind::CriticalHigh: return "critical_high";
        case RegimeKind::Supercritical: return "supercritical";
    }
    return "?";
}

RegimeKind regime_kind_from_string(const std::string& s) {
    if (s == "subcritical") return RegimeKind::Subcritical;
    if (s == "critical_low") return RegimeKind::CriticalLow;
    if (s == "critical_high") return RegimeKind::CriticalHigh;
    if (s == "supercritical") return RegimeKind::Supercritical;
    throw std::invalid_argument("unknown regime kind: " + s);
}

ModelParams::ModelParams(int d_, std::vector<double> taus_, double volume_,
                         RegimeSpec regime_)
    : d(d_), taus(std::move(taus_)), volume(volume_), regime(regime_) {
    validate();
}

void ModelParams::validate() const {
    if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
    if (taus.empty()) throw std::invalid_argument("taus must be non-empty");
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i - 1] < taus[i]))
            throw std::invalid_argument("taus must be strictly increasing");
    if (!(taus.front() > -0.5 * d))
        throw std::invalid_argument("taus[0] must exceed -d/2");
    if (!(volume > 0.0)) throw std::invalid_argument("volume must be positive");
    regime.validate();
}

nlohmann::json ModelParams::to_json() const {
    nlohmann::json j{{"d", d}, {"taus", taus}, {"volume", volume}};
    nlohmann::json r{{"kind", to_string(regime.kind)}};
    if (regime.is_critical()) r["c"] = regime.c;
    j["regime"] = r;
    return j;
}

ModelParams ModelParams::from_json(const nlohmann::json& j) {
    RegimeSpec regime;
    const auto& r = j.at("regime");
    regime.kind = regime_kind_from_string(r.at("kind").get<std::string>());
    if (r.contains("c")) regime.c = r.at("c").get<double>();
    return ModelParams(j.at("d").get<int>(), j.at("taus").get<std::vector<double>>(),
                       j.at("volume").get<double>(), regime);
}

double unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume requires d >= 1");
    // log-Gamma keeps this finite well past d ~ 50
    const double half = 0.5 * d;
    return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

DerivedScalars derive_scalars(const ModelParams& params) {
    params.validate();
    DerivedScalars s;
    const std::size_t n = params.n();
    s.a.resize(n);
    s.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.a[i] = params.taus[i] + params.d;
        s.x[i] = params.taus[i] + 0.5 * params.d;
    }
    s.kappa_d = unit_ball_volume(params.d);
    s.b = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double prod = 1.0;
        for (std::size_t l = 0; l < n; ++l)
            if (l != k) prod *= s.a[l] * s.a[l];
        s.b += prod;
    }
    return s;
}

double intensity_product(double t, double delta, int d) {
    if (!(t > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("t and delta must be positive");
    return t * std::pow(delta, d);
}

ScheduleClassification regime_of_schedule(double t, double delta, int d, double kappa,
                                          double alpha) {
    ScheduleClassification out;
    out.t_delta_d = intensity_product(t, delta, d);
    const double inv_d = 1.0 / d;
    if (alpha > inv_d) {
        out.limit = RegimeSpec::subcritical();
    } else if (alpha < inv_d) {
        out.limit = RegimeSpec::supercritical();
    } else {
        out.limit = RegimeSpec::critical(std::pow(kappa, d));
    }
    return out;
}

}  // namespace rgg
