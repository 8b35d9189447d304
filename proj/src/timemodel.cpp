#include "amcost/timemodel.hpp"

#include <cmath>
#include <stdexcept>

namespace amcost {

void TimeModelParams::validate() const {
    if (!(t_layer_s > 0.0)) {
        throw std::invalid_argument("time model: t_layer_s must be > 0");
    }
    if (!(melt_rate_cm3_per_h > 0.0)) {
        throw std::invalid_argument("time model: melt_rate_cm3_per_h must be > 0");
    }
}

CalibrationResult calibrate(std::span<const TimeObservation> observations) {
    if (observations.size() < 2) {
        throw std::runtime_error("calibrate: singular system (need at least 2 observations)");
    }
    // Normal equations for T = a * n + b * V with a = t_layer/3600, b = 1/rate.
    double s_nn = 0.0, s_nv = 0.0, s_vv = 0.0, s_nt = 0.0, s_vt = 0.0;
    for (const TimeObservation& o : observations) {
        const double n = static_cast<double>(o.n_layers);
        s_nn += n * n;
        s_nv += n * o.v_build_cm3;
        s_vv += o.v_build_cm3 * o.v_build_cm3;
        s_nt += n * o.t_build_h;
        s_vt += o.v_build_cm3 * o.t_build_h;
    }
    const double det = s_nn * s_vv - s_nv * s_nv;
    if (!(std::abs(det) > 1e-12 * std::max(s_nn * s_vv, 1.0))) {
        throw std::runtime_error("calibrate: singular system (observations carry no volume spread)");
    }
    const double a = (s_vv * s_nt - s_nv * s_vt) / det;
    const double b = (s_nn * s_vt - s_nv * s_nt) / det;
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::runtime_error("calibrate: fitted parameter is not positive");
    }

    CalibrationResult result;
    result.params.t_layer_s = a * 3600.0;
    result.params.melt_rate_cm3_per_h = 1.0 / b;
    for (const TimeObservation& o : observations) {
        const double pred = a * o.n_layers + b * o.v_build_cm3;
        const double rel = o.t_build_h > 0.0 ? std::abs(pred - o.t_build_h) / o.t_build_h : 0.0;
        result.rel_residuals.push_back(rel);
        result.max_rel_residual = std::max(result.max_rel_residual, rel);
    }
    return result;
}

double estimate_build_time_h(int n_layers, double v_build_cm3, const TimeModelParams& params) {
    params.validate();
    if (n_layers == 0 && v_build_cm3 == 0.0) {
        return 0.0;
    }
    return n_layers * params.t_layer_s / 3600.0 + v_build_cm3 / params.melt_rate_cm3_per_h;
}

double estimate_build_time_h(const PackedBuild& build, const TimeModelParams& params) {
    return estimate_build_time_h(build.n_layers, build.v_build_cm3, params);
}

}  // namespace amcost
