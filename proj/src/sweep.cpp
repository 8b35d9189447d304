#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "amcost/scenario.hpp"

namespace amcost {

namespace {

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

SweepRow cost_columns(const Scenario& sc, BuildMode mode, int count, double v, double v_build,
                      double t_build, int n_layers) {
    SweepRow row;
    row.mode = mode;
    row.blower_count = count;
    row.v = v;
    row.v_build_cm3 = v_build;
    row.t_build_h = t_build;
    row.deposition_rate_cm3_h = t_build > 0.0 ? v_build / t_build : 0.0;
    row.c_build = build_cost(sc.profile, v_build, t_build);
    row.c_unit = unit_cost(v, row.c_build, sc.profile);
    row.c_total = total_unit_cost(v, row.c_build, sc.profile, sc.failure, n_layers);
    return row;
}

std::vector<SweepRow> sweep_packed(const Scenario& sc, SweepMode mode, int count_lo,
                                   int count_hi) {
    if (count_lo < 1 || count_hi < count_lo) {
        throw std::invalid_argument("run_sweep: bad count range");
    }
    sc.time_model.validate();
    const PartSpec unit = sc.load_unit_part();
    const std::vector<PartSpec> basket =
        mode == SweepMode::mixed ? sc.load_basket() : std::vector<PartSpec>{};

    std::vector<SweepRow> rows;
    for (int count = count_lo; count <= count_hi; ++count) {
        PackedBuild build;
        if (mode == SweepMode::single) {
            build = pack_single(unit, count, sc.build_volume, sc.layer_thickness_mm,
                                sc.voxel_resolution_mm);
            if (build.truncated) {
                throw std::runtime_error("run_sweep: count " + std::to_string(count) +
                                         " exceeds single-build capacity");
            }
        } else {
            build = pack_mixed({{unit, count}}, basket, sc.build_volume, sc.layer_thickness_mm,
                               sc.voxel_resolution_mm);
        }
        const double t_build = estimate_build_time_h(build, sc.time_model);
        const double v = volume_fraction(unit.deposited_volume_cm3, build.v_build_cm3);
        rows.push_back(cost_columns(sc,
                                    mode == SweepMode::single ? BuildMode::single : BuildMode::mixed,
                                    count, v, build.v_build_cm3, t_build, build.n_layers));
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> load_sweep_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open sweep fixture: " + path.string());
    }
    std::vector<SweepRow> rows;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 9) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 9 columns");
        }
        SweepRow row;
        try {
            if (fields[0] == "single") {
                row.mode = BuildMode::single;
            } else if (fields[0] == "mixed") {
                row.mode = BuildMode::mixed;
            } else {
                throw std::invalid_argument("mode");
            }
            row.blower_count = std::stoi(fields[1]);
            row.v = std::stod(fields[2]) / 100.0;
            row.v_build_cm3 = std::stod(fields[3]);
            row.t_build_h = std::stod(fields[4]);
            row.deposition_rate_cm3_h = std::stod(fields[5]);
            row.c_build = std::stod(fields[6]);
            row.c_unit = std::stod(fields[7]);
            row.c_total = std::stod(fields[8]);
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": malformed row");
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw std::runtime_error(path.string() + ": no data rows");
    }
    return rows;
}

std::vector<SweepRow> run_sweep(const Scenario& sc, SweepMode mode, int count_lo, int count_hi) {
    if (mode != SweepMode::fixture) {
        return sweep_packed(sc, mode, count_lo, count_hi);
    }
    if (sc.sweep_fixture.empty()) {
        throw std::runtime_error("run_sweep: scenario has no [fixture] sweep dataset");
    }
    const int n_layers = sc.unit_layer_count();
    std::vector<SweepRow> rows;
    for (const SweepRow& fixture : load_sweep_fixture(sc.sweep_fixture)) {
        rows.push_back(cost_columns(sc, fixture.mode, fixture.blower_count, fixture.v,
                                    fixture.v_build_cm3, fixture.t_build_h, n_layers));
    }
    return rows;
}

ComparisonReport compare(std::span<const SweepRow> mixed_rows,
                         std::span<const SweepRow> single_rows,
                         std::span<const ConventionalCostRecord> conventional,
                         const std::optional<UsePhaseScenario>& use_phase, int reference_count,
                         int baseline_batch, double unit_volume_cm3) {
    if (mixed_rows.empty() || single_rows.empty()) {
        throw std::invalid_argument("compare: both sweeps must be non-empty");
    }
    if (conventional.empty()) {
        throw std::invalid_argument("compare: conventional record list is empty");
    }

    ComparisonReport rep;
    auto min_row = [](std::span<const SweepRow> rows) {
        return std::min_element(rows.begin(), rows.end(),
                                [](const SweepRow& a, const SweepRow& b) {
                                    return a.c_total < b.c_total;
                                });
    };
    auto max_row = [](std::span<const SweepRow> rows) {
        return std::max_element(rows.begin(), rows.end(),
                                [](const SweepRow& a, const SweepRow& b) {
                                    return a.c_total < b.c_total;
                                });
    };
    const SweepRow& best_mixed = *min_row(mixed_rows);
    const SweepRow& worst_mixed = *max_row(mixed_rows);
    const SweepRow& best_single = *min_row(single_rows);

    rep.min_cost_count_mixed = best_mixed.blower_count;
    rep.min_cost_mixed = best_mixed.c_total;
    rep.specific_cost_mixed = specific_cost(best_mixed.c_total, unit_volume_cm3);
    rep.min_cost_count_single = best_single.blower_count;
    rep.min_cost_single = best_single.c_total;
    rep.specific_cost_single = specific_cost(best_single.c_total, unit_volume_cm3);

    const SweepRow* reference = nullptr;
    for (const SweepRow& row : mixed_rows) {
        if (row.blower_count == reference_count) {
            reference = &row;
            break;
        }
    }
    if (reference == nullptr) {
        throw std::invalid_argument("compare: no mixed row with the reference count " +
                                    std::to_string(reference_count));
    }
    rep.reference_count = reference_count;
    rep.reference_c_total = reference->c_total;

    for (const ConventionalCostRecord& rec : conventional) {
        SavingsEntry entry;
        entry.batch_size = rec.batch_size;
        entry.conventional_unit_cost = rec.unit_cost_eur;
        entry.saving_min = 1.0 - worst_mixed.c_total / rec.unit_cost_eur;
        entry.saving_max = 1.0 - best_mixed.c_total / rec.unit_cost_eur;
        entry.saving_reference = 1.0 - reference->c_total / rec.unit_cost_eur;
        rep.savings.push_back(entry);
    }

    // Per-count overstatement of the single-geometry model, over the counts
    // present in both sweeps.
    for (const SweepRow& m : mixed_rows) {
        for (const SweepRow& s : single_rows) {
            if (s.blower_count == m.blower_count) {
                rep.overstatement.emplace_back(m.blower_count, s.c_total / m.c_total - 1.0);
                break;
            }
        }
    }
    if (rep.overstatement.empty()) {
        throw std::invalid_argument("compare: sweeps share no blower counts");
    }
    std::sort(rep.overstatement.begin(), rep.overstatement.end());
    double sum = 0.0;
    for (const auto& [count, over] : rep.overstatement) {
        sum += over;
    }
    rep.mean_overstatement = sum / static_cast<double>(rep.overstatement.size());

    if (use_phase) {
        const ConventionalCostRecord* baseline = nullptr;
        for (const ConventionalCostRecord& rec : conventional) {
            if (rec.batch_size == baseline_batch) {
                baseline = &rec;
                break;
            }
        }
        if (baseline == nullptr) {
            throw std::invalid_argument("compare: no conventional record for baseline batch " +
                                        std::to_string(baseline_batch));
        }
        LifecycleResult lc;
        lc.s_energy_eur_per_year = annual_energy_saving_eur(*use_phase);
        lc.saving_positive = use_phase->has_positive_saving();
        lc.ds_energy_eur = discounted_saving_eur(lc.s_energy_eur_per_year,
                                                 use_phase->discount_rate,
                                                 use_phase->depreciation_years);
        lc.manufacturing_delta_eur = baseline->unit_cost_eur - reference->c_total;
        lc.theta = value_share(baseline->unit_cost_eur, reference->c_total, lc.ds_energy_eur);
        rep.lifecycle = lc;
    }
    return rep;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "mode,count,v_pct,V_build_cm3,T_build_h,dep_rate_cm3_h,C_build,C_unit,C_total\n";
    for (const SweepRow& row : rows) {
        os << (row.mode == BuildMode::single ? "single" : "mixed") << ',' << row.blower_count
           << ',' << fmt("%.2f", row.v * 100.0) << ',' << fmt("%.2f", row.v_build_cm3) << ','
           << fmt("%.2f", row.t_build_h) << ',' << fmt("%.2f", row.deposition_rate_cm3_h) << ','
           << fmt("%.2f", row.c_build) << ',' << fmt("%.2f", row.c_unit) << ','
           << fmt("%.2f", row.c_total) << "\n";
    }
}

void write_comparison_text(std::ostream& os, const ComparisonReport& rep) {
    os << "# comparison\n";
    os << "mean_overstatement_pct " << fmt("%.1f", rep.mean_overstatement * 100.0) << "\n";
    for (const auto& [count, over] : rep.overstatement) {
        os << "overstatement_pct count " << count << " " << fmt("%.1f", over * 100.0) << "\n";
    }
    for (const SavingsEntry& entry : rep.savings) {
        os << "saving_vs_batch " << entry.batch_size << " unit_cost_eur "
           << fmt("%.2f", entry.conventional_unit_cost) << " min_pct "
           << fmt("%.1f", entry.saving_min * 100.0) << " max_pct "
           << fmt("%.1f", entry.saving_max * 100.0) << " reference_pct "
           << fmt("%.1f", entry.saving_reference * 100.0) << "\n";
    }
    os << "min_cost_mixed count " << rep.min_cost_count_mixed << " c_total_eur "
       << fmt("%.2f", rep.min_cost_mixed) << " specific_eur_per_cm3 "
       << fmt("%.2f", rep.specific_cost_mixed) << "\n";
    os << "min_cost_single count " << rep.min_cost_count_single << " c_total_eur "
       << fmt("%.2f", rep.min_cost_single) << " specific_eur_per_cm3 "
       << fmt("%.2f", rep.specific_cost_single) << "\n";
    os << "reference_build count " << rep.reference_count << " c_total_eur "
       << fmt("%.2f", rep.reference_c_total) << "\n";
    if (rep.lifecycle) {
        const LifecycleResult& lc = *rep.lifecycle;
        os << "s_energy_eur_per_year " << fmt("%.2f", lc.s_energy_eur_per_year) << "\n";
        os << "ds_energy_eur " << fmt("%.2f", lc.ds_energy_eur) << "\n";
        os << "manufacturing_delta_eur " << fmt("%.2f", lc.manufacturing_delta_eur) << "\n";
        os << "theta_pct " << fmt("%.2f", lc.theta * 100.0) << "\n";
        if (!lc.saving_positive) {
            os << "note use-phase power saving is not positive\n";
        }
    }
    if (rep.calibration) {
        os << "# time model calibration\n";
        os << "t_layer_s " << fmt("%.4f", rep.calibration->params.t_layer_s) << "\n";
        os << "melt_rate_cm3_per_h " << fmt("%.4f", rep.calibration->params.melt_rate_cm3_per_h)
           << "\n";
        os << "rows_used " << rep.calibration->rel_residuals.size() << "\n";
        os << "max_rel_residual_pct " << fmt("%.3f", rep.calibration->max_rel_residual * 100.0)
           << "\n";
    }
}

void emit_report(const std::filesystem::path& out, std::span<const SweepRow> rows,
                 const ComparisonReport* report, ReportFormat format) {
    std::ofstream os(out);
    if (!os) {
        throw std::runtime_error("cannot write report: " + out.string());
    }
    write_sweep_csv(os, rows);
    if (format == ReportFormat::structured_text && report != nullptr) {
        os << "\n";
        write_comparison_text(os, *report);
    }
    if (!os) {
        throw std::runtime_error("report write failed: " + out.string());
    }
}

}  // namespace amcost
