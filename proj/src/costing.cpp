#include "amcost/costing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace amcost {

namespace {

void require_non_negative(double value, const char* field) {
    if (!(value >= 0.0)) {
        throw std::invalid_argument(std::string("profile: ") + field + " must be >= 0");
    }
}

}  // namespace

void ProcessProfile::validate() const {
    require_non_negative(p_material_eur_per_cm3, "p_material_eur_per_cm3");
    require_non_negative(setup_labour_eur, "c_setup_labour_eur");
    require_non_negative(indirect_rate_eur_per_h, "indirect_rate_eur_per_h");
    require_non_negative(energy_rate_eur_per_h, "energy_rate_eur_per_h");
    require_non_negative(labour_rate_eur_per_h, "labour_rate_eur_per_h");
    require_non_negative(t_process_h, "t_process_h");

    const double composed = production_overhead_eur_per_h + administration_overhead_eur_per_h +
                            machine_cost_rate_eur_per_h;
    if (composed > 0.0 && std::abs(composed - indirect_rate_eur_per_h) > 1e-6) {
        throw std::invalid_argument(
            "profile: indirect_rate_eur_per_h does not equal production + administration + "
            "machine cost rates");
    }
    const double energy_composed = energy_price_eur_per_mj * process_energy_mj_per_h;
    if (energy_composed > 0.0 && std::abs(energy_composed - energy_rate_eur_per_h) > 1e-9) {
        throw std::invalid_argument(
            "profile: energy_rate_eur_per_h does not equal energy price x consumption rate");
    }
}

void FailureModel::validate() const {
    if (!(p_constant >= 0.0) || !(p_constant < 1.0)) {
        throw std::invalid_argument("failure: p_constant must lie in [0, 1)");
    }
}

double build_cost(const ProcessProfile& profile, double v_build_cm3, double t_build_h) {
    if (v_build_cm3 < 0.0 || t_build_h < 0.0) {
        throw std::invalid_argument("build_cost: negative volume or time");
    }
    return profile.p_material_eur_per_cm3 * v_build_cm3 + profile.setup_labour_eur +
           (profile.indirect_rate_eur_per_h + profile.energy_rate_eur_per_h) * t_build_h;
}

double volume_fraction(double v_part_cm3, double v_build_cm3) {
    if (!(v_build_cm3 > 0.0)) {
        throw std::invalid_argument("volume_fraction: V_build must be > 0");
    }
    if (!(v_part_cm3 > 0.0) || v_part_cm3 > v_build_cm3 * (1.0 + 1e-12)) {
        throw std::invalid_argument("volume_fraction: V_part must lie in (0, V_build]");
    }
    return v_part_cm3 / v_build_cm3;
}

double unit_cost(double v, double c_build, const ProcessProfile& profile) {
    if (!(v > 0.0) || v > 1.0 + 1e-12) {
        throw std::invalid_argument("unit_cost: v must lie in (0, 1]");
    }
    return v * c_build + profile.postprocess_labour_eur();
}

double survival_probability(const FailureModel& failure, int n_layers) {
    failure.validate();
    if (n_layers < 0) {
        throw std::invalid_argument("survival_probability: negative layer count");
    }
    return std::pow(1.0 - failure.p_constant, static_cast<double>(n_layers));
}

double failure_multiplier(const FailureModel& failure, int n_layers) {
    failure.validate();
    if (n_layers < 0) {
        throw std::invalid_argument("failure_multiplier: negative layer count");
    }
    return std::pow(1.0 - failure.p_constant, -static_cast<double>(n_layers));
}

double total_unit_cost(double v, double c_build, const ProcessProfile& profile,
                       const FailureModel& failure, int n_layers) {
    const double multiplier = failure_multiplier(failure, n_layers);
    double at_risk = v * c_build;
    double safe = 0.0;
    if (failure.exclude_setup_labour) {
        safe = v * profile.setup_labour_eur;
        at_risk -= safe;
    }
    return at_risk * multiplier + safe + profile.postprocess_labour_eur();
}

CostBreakdown breakdown(double v, double v_build_cm3, double t_build_h,
                        const ProcessProfile& profile, const FailureModel& failure,
                        int n_layers) {
    CostBreakdown b;
    b.v = v;
    b.c_build = build_cost(profile, v_build_cm3, t_build_h);
    b.material = v * profile.p_material_eur_per_cm3 * v_build_cm3;
    b.setup_labour = v * profile.setup_labour_eur;
    b.indirect = v * profile.indirect_rate_eur_per_h * t_build_h;
    b.energy = v * profile.energy_rate_eur_per_h * t_build_h;
    b.postprocess_labour = profile.postprocess_labour_eur();
    b.c_unit = b.material + b.setup_labour + b.indirect + b.energy + b.postprocess_labour;

    const double multiplier = failure_multiplier(failure, n_layers);
    const double at_risk =
        failure.exclude_setup_labour ? v * b.c_build - b.setup_labour : v * b.c_build;
    b.failure_premium = at_risk * (multiplier - 1.0);
    b.c_total = b.c_unit + b.failure_premium;

    if (b.c_total > 0.0) {
        b.shares.material = b.material / b.c_total;
        b.shares.setup_labour = b.setup_labour / b.c_total;
        b.shares.indirect = b.indirect / b.c_total;
        b.shares.energy = b.energy / b.c_total;
        b.shares.failure_premium = b.failure_premium / b.c_total;
        b.shares.postprocess_labour = b.postprocess_labour / b.c_total;
    }
    return b;
}

double specific_cost(double c_total, double v_part_cm3) {
    if (!(v_part_cm3 > 0.0)) {
        throw std::invalid_argument("specific_cost: part volume must be > 0");
    }
    return c_total / v_part_cm3;
}

}  // namespace amcost
