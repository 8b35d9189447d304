// Use-phase economics: annual energy savings from design adaptation, their
// discounted present value over the depreciation period, and the split of
// the created value between manufacturer and end user.
#pragma once

namespace amcost {

struct UsePhaseScenario {
    double power_conventional_w = 0.0;
    double power_am_w = 0.0;
    double annual_hours = 0.0;
    double lifetime_hours = 0.0;
    double depreciation_years = 0.0;          // k
    double use_energy_price_eur_per_mj = 0.0;
    double discount_rate = 0.0;               // r, annual

    // informational; the energy saving is throughput-independent
    double throughput_high_per_h = 0.0;
    double throughput_low_per_h = 0.0;

    void validate() const;
    bool has_positive_saving() const { return power_am_w < power_conventional_w; }
};

double annual_energy_mj(double power_w, double annual_hours);

// S = (P_conv - P_am) * annual hours, converted to MJ, times the use-phase
// energy price. Negative when the redesign consumes more power.
double annual_energy_saving_eur(const UsePhaseScenario& s);

// Continuous annuity: DS = S * ((1 - r)^k - 1) / ln(1 - r), with the S * k
// limit at r = 0.
double discounted_saving_eur(double s_eur_per_year, double discount_rate, double k_years);

// theta = delta / (DS + delta) with delta = C_conventional - C_total_am.
double value_share(double c_conventional, double c_total_am, double discounted_saving);

}  // namespace amcost
