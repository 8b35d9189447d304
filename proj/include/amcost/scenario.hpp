// Scenario configuration, reference cost records for the conventional
// pathway, sweep orchestration and report emission.
#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amcost/costing.hpp"
#include "amcost/lifecycle.hpp"
#include "amcost/packer.hpp"
#include "amcost/timemodel.hpp"

namespace amcost {

struct ConventionalShare {
    std::string label;
    std::string process;
    double percent = 0.0;
};

// Unit cost of the conventional (turning + CNC + TIG) pathway at one batch
// size, with cost components as percentage shares.
struct ConventionalCostRecord {
    int batch_size = 0;
    double unit_cost_eur = 0.0;
    std::vector<ConventionalShare> shares;

    void validate() const;  // shares sum to 100% within 0.5 pp
};

struct PartConfig {
    std::filesystem::path path;
    std::string name;
    std::optional<double> volume_cm3;  // overrides the mesh volume
    std::optional<double> height_mm;   // overrides the mesh height
};

struct Scenario {
    ProcessProfile profile;
    FailureModel failure;
    BuildVolume build_volume;
    double layer_thickness_mm = 0.02;
    double voxel_resolution_mm = 1.0;

    PartConfig unit_part;
    std::vector<PartConfig> basket;
    TimeModelParams time_model;
    std::optional<UsePhaseScenario> use_phase;
    std::vector<ConventionalCostRecord> conventional;

    std::filesystem::path sweep_fixture;  // reference sweep dataset (CSV)
    int reference_count = 4;   // blower count of the real build configuration
    int baseline_batch = 60;   // conventional batch used for delta and theta

    double unit_volume_cm3() const;  // override required unless geometry is loaded
    double unit_height_mm() const;
    int unit_layer_count() const;

    PartSpec load_unit_part() const;
    std::vector<PartSpec> load_basket() const;
};

// Parses and fully validates a scenario file; every constituent type's
// invariants are checked at load with field-level messages.
Scenario load_scenario(const std::filesystem::path& path);

enum class SweepMode { single, mixed, fixture };

struct SweepRow {
    BuildMode mode = BuildMode::single;
    int blower_count = 0;
    double v = 0.0;  // fraction
    double v_build_cm3 = 0.0;
    double t_build_h = 0.0;
    double deposition_rate_cm3_h = 0.0;
    double c_build = 0.0;
    double c_unit = 0.0;
    double c_total = 0.0;
};

// Reads the reference sweep dataset with its published cost columns intact.
std::vector<SweepRow> load_sweep_fixture(const std::filesystem::path& path);

// One row per blower count. In fixture mode (v, V_build, T_build) come from
// the dataset and only the cost columns are recomputed; in the packing modes
// builds are packed and timed from the scenario geometry. count_lo/count_hi
// are ignored in fixture mode.
std::vector<SweepRow> run_sweep(const Scenario& scenario, SweepMode mode, int count_lo,
                                int count_hi);

struct SavingsEntry {
    int batch_size = 0;
    double conventional_unit_cost = 0.0;
    double saving_min = 0.0;        // against the costliest mixed row
    double saving_max = 0.0;        // against the cheapest mixed row
    double saving_reference = 0.0;  // against the reference-count mixed row
};

struct LifecycleResult {
    double s_energy_eur_per_year = 0.0;
    double ds_energy_eur = 0.0;
    double manufacturing_delta_eur = 0.0;
    double theta = 0.0;
    bool saving_positive = true;
};

struct ComparisonReport {
    std::vector<SavingsEntry> savings;
    std::vector<std::pair<int, double>> overstatement;  // count -> ratio - 1
    double mean_overstatement = 0.0;

    int min_cost_count_mixed = 0;
    double min_cost_mixed = 0.0;
    double specific_cost_mixed = 0.0;
    int min_cost_count_single = 0;
    double min_cost_single = 0.0;
    double specific_cost_single = 0.0;

    int reference_count = 0;
    double reference_c_total = 0.0;

    std::optional<LifecycleResult> lifecycle;
    std::optional<CalibrationResult> calibration;  // time model provenance
};

// Savings envelope against every conventional record, per-count unit cost
// overstatement of the single-geometry model, minimum cost configurations
// and, when a use phase is configured, the discounted saving and value share.
ComparisonReport compare(std::span<const SweepRow> mixed_rows,
                         std::span<const SweepRow> single_rows,
                         std::span<const ConventionalCostRecord> conventional,
                         const std::optional<UsePhaseScenario>& use_phase, int reference_count,
                         int baseline_batch, double unit_volume_cm3);

enum class ReportFormat { csv, structured_text };

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
void write_comparison_text(std::ostream& os, const ComparisonReport& report);

// csv: the sweep table only. structured_text: the table followed by the
// comparison section. Output is byte-stable for identical inputs.
void emit_report(const std::filesystem::path& out, std::span<const SweepRow> rows,
                 const ComparisonReport* report, ReportFormat format);

}  // namespace amcost
