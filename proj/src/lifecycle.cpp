#include "amcost/lifecycle.hpp"

#include <cmath>
#include <stdexcept>

namespace amcost {

void UsePhaseScenario::validate() const {
    if (!(power_conventional_w >= 0.0) || !(power_am_w >= 0.0)) {
        throw std::invalid_argument("use_phase: power values must be >= 0");
    }
    if (!(annual_hours > 0.0)) {
        throw std::invalid_argument("use_phase: annual_hours must be > 0");
    }
    if (!(lifetime_hours > 0.0)) {
        throw std::invalid_argument("use_phase: lifetime_hours must be > 0");
    }
    if (!(use_energy_price_eur_per_mj >= 0.0)) {
        throw std::invalid_argument("use_phase: use_energy_price_eur_per_mj must be >= 0");
    }
    if (!(discount_rate >= 0.0) || !(discount_rate < 1.0)) {
        throw std::invalid_argument("use_phase: discount_rate must lie in [0, 1)");
    }
    if (!(depreciation_years >= 0.0)) {
        throw std::invalid_argument("use_phase: depreciation_years must be >= 0");
    }
    // k is the lifetime expressed in operating years.
    const double derived_k = lifetime_hours / annual_hours;
    if (std::abs(derived_k - depreciation_years) > 1e-3) {
        throw std::invalid_argument(
            "use_phase: depreciation_years inconsistent with lifetime_hours / annual_hours");
    }
}

double annual_energy_mj(double power_w, double annual_hours) {
    return power_w * annual_hours * 3600.0 / 1e6;  // W * h -> MJ
}

double annual_energy_saving_eur(const UsePhaseScenario& s) {
    const double delta_mj =
        annual_energy_mj(s.power_conventional_w, s.annual_hours) -
        annual_energy_mj(s.power_am_w, s.annual_hours);
    return delta_mj * s.use_energy_price_eur_per_mj;
}

double discounted_saving_eur(double s_eur_per_year, double discount_rate, double k_years) {
    if (!(discount_rate >= 0.0) || discount_rate >= 1.0) {
        throw std::invalid_argument("discounted_saving: rate must lie in [0, 1)");
    }
    if (k_years < 0.0) {
        throw std::invalid_argument("discounted_saving: k must be >= 0");
    }
    if (discount_rate == 0.0) {
        return s_eur_per_year * k_years;  // limit of the annuity
    }
    const double log1mr = std::log(1.0 - discount_rate);
    return s_eur_per_year * (std::pow(1.0 - discount_rate, k_years) - 1.0) / log1mr;
}

double value_share(double c_conventional, double c_total_am, double discounted_saving) {
    const double delta = c_conventional - c_total_am;
    const double denom = discounted_saving + delta;
    if (std::abs(denom) < 1e-12) {
        throw std::invalid_argument("value_share: zero denominator");
    }
    return delta / denom;
}

}  // namespace amcost
