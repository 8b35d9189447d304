// Activity-based cost model for the DMLS route: build-level cost, volume
// fraction apportioning, per-layer failure risk and the unit cost breakdown.
#pragma once

namespace amcost {

// All rates and prices for one process setup. The named rates drive the
// model; the remaining fields are informational and only cross-checked.
struct ProcessProfile {
    double p_material_eur_per_cm3 = 0.0;
    double setup_labour_eur = 0.0;        // fixed per-build increment
    double indirect_rate_eur_per_h = 0.0;
    double energy_rate_eur_per_h = 0.0;
    double labour_rate_eur_per_h = 0.0;
    double t_process_h = 0.0;             // post-processing per unit

    // informational (Ref. machine bookkeeping); zero when not supplied
    double production_overhead_eur_per_h = 0.0;
    double administration_overhead_eur_per_h = 0.0;
    double machine_cost_rate_eur_per_h = 0.0;
    double machine_utilisation_pct = 0.0;
    double annual_operating_hours = 0.0;
    double energy_price_eur_per_mj = 0.0;
    double process_energy_mj_per_h = 0.0;

    double postprocess_labour_eur() const { return labour_rate_eur_per_h * t_process_h; }

    // Non-negativity plus composition checks: the indirect rate must equal
    // overheads + machine cost rate and the energy rate must equal
    // energy price x consumption rate whenever those fields are present.
    void validate() const;
};

struct FailureModel {
    double p_constant = 0.00025;       // per-layer probability of outright build failure
    bool exclude_setup_labour = false; // keep setup labour outside the failure multiplier

    void validate() const;  // 0 <= p < 1
};

// C_build = P_material * V_build + setup + (indirect + energy) * T_build
double build_cost(const ProcessProfile& profile, double v_build_cm3, double t_build_h);

// v = V_part / V_build; throws on an empty build or a part exceeding it.
double volume_fraction(double v_part_cm3, double v_build_cm3);

// C_unit = v * C_build + labour * T_process
double unit_cost(double v, double c_build, const ProcessProfile& profile);

// (1 - p)^n and its inverse, the expected-cost multiplier.
double survival_probability(const FailureModel& failure, int n_layers);
double failure_multiplier(const FailureModel& failure, int n_layers);

// C_total = v * C_build * (1 - p)^-n + labour * T_process. Post-processing
// labour sits after the failure node and is never multiplied. With
// exclude_setup_labour the apportioned setup share is left unmultiplied too.
double total_unit_cost(double v, double c_build, const ProcessProfile& profile,
                       const FailureModel& failure, int n_layers);

struct CostShares {
    double material = 0.0;
    double setup_labour = 0.0;
    double indirect = 0.0;
    double energy = 0.0;
    double failure_premium = 0.0;
    double postprocess_labour = 0.0;

    double sum() const {
        return material + setup_labour + indirect + energy + failure_premium + postprocess_labour;
    }
};

struct CostBreakdown {
    // per-unit cost components, EUR
    double material = 0.0;
    double setup_labour = 0.0;
    double indirect = 0.0;
    double energy = 0.0;
    double failure_premium = 0.0;
    double postprocess_labour = 0.0;

    double v = 0.0;
    double c_build = 0.0;
    double c_unit = 0.0;   // sum of components except the failure premium
    double c_total = 0.0;  // c_unit + failure_premium
    CostShares shares;     // each component as a fraction of c_total
};

CostBreakdown breakdown(double v, double v_build_cm3, double t_build_h,
                        const ProcessProfile& profile, const FailureModel& failure, int n_layers);

// C_total per deposited cm3 of the part.
double specific_cost(double c_total, double v_part_cm3);

}  // namespace amcost
