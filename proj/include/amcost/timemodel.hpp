// Two-parameter build time model: a fixed per-layer term (recoating and
// overhead) plus deposited volume over a volumetric exposure rate.
#pragma once

#include <span>
#include <vector>

#include "amcost/packer.hpp"

namespace amcost {

struct TimeModelParams {
    double t_layer_s = 0.0;             // seconds per layer
    double melt_rate_cm3_per_h = 0.0;   // volumetric exposure rate

    void validate() const;  // both strictly positive
};

struct TimeObservation {
    int n_layers = 0;
    double v_build_cm3 = 0.0;
    double t_build_h = 0.0;
};

struct CalibrationResult {
    TimeModelParams params;
    std::vector<double> rel_residuals;  // one per observation, |pred - T| / T
    double max_rel_residual = 0.0;
};

// Least-squares fit of T = n * t_layer / 3600 + V / melt_rate. Throws on a
// singular system (fewer than two observations or no variation) and on
// non-positive fitted parameters.
CalibrationResult calibrate(std::span<const TimeObservation> observations);

double estimate_build_time_h(int n_layers, double v_build_cm3, const TimeModelParams& params);
double estimate_build_time_h(const PackedBuild& build, const TimeModelParams& params);

}  // namespace amcost
