// Command line entry point: pack, sweep, cost, compare, lifecycle and
// breakdown workflows over a scenario file. All configuration flows through
// the scenario and flags; runs are deterministic and timestamp-free.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "amcost/scenario.hpp"

namespace {

using namespace amcost;

std::vector<SweepRow> filter_mode(const std::vector<SweepRow>& rows, BuildMode mode) {
    std::vector<SweepRow> out;
    for (const SweepRow& row : rows) {
        if (row.mode == mode) {
            out.push_back(row);
        }
    }
    return out;
}

// Calibrates the time model against the single-geometry rows of the fixture
// dataset, for the report's provenance block.
CalibrationResult calibrate_on_fixture(const Scenario& sc) {
    const int n_layers = sc.unit_layer_count();
    std::vector<TimeObservation> obs;
    for (const SweepRow& row : load_sweep_fixture(sc.sweep_fixture)) {
        if (row.mode == BuildMode::single) {
            obs.push_back({n_layers, row.v_build_cm3, row.t_build_h});
        }
    }
    return calibrate(obs);
}

ComparisonReport build_comparison(const Scenario& sc) {
    const std::vector<SweepRow> rows = run_sweep(sc, SweepMode::fixture, 0, 0);
    const std::vector<SweepRow> mixed = filter_mode(rows, BuildMode::mixed);
    const std::vector<SweepRow> single = filter_mode(rows, BuildMode::single);
    ComparisonReport rep = compare(mixed, single, sc.conventional, sc.use_phase,
                                   sc.reference_count, sc.baseline_batch, sc.unit_volume_cm3());
    rep.calibration = calibrate_on_fixture(sc);
    return rep;
}

int run_pack(const std::string& scenario_path, const std::string& mode, int count,
             const std::string& out) {
    const Scenario sc = load_scenario(scenario_path);
    PackedBuild build;
    if (mode == "single") {
        build = pack_single(sc.load_unit_part(), count, sc.build_volume, sc.layer_thickness_mm,
                            sc.voxel_resolution_mm);
    } else {
        std::vector<std::pair<PartSpec, int>> required;
        if (count > 0) {
            required.emplace_back(sc.load_unit_part(), count);
        }
        build = pack_mixed(required, sc.load_basket(), sc.build_volume, sc.layer_thickness_mm,
                           sc.voxel_resolution_mm);
    }
    if (out.empty()) {
        write_manifest(build, std::cout);
    } else {
        std::ofstream os(out);
        if (!os) {
            throw std::runtime_error("cannot write manifest: " + out);
        }
        write_manifest(build, os);
        std::printf("manifest %s\n", out.c_str());
    }
    std::printf("placed %zu\n", build.instances.size());
    std::printf("v_build_cm3 %.6f\n", build.v_build_cm3);
    std::printf("n_layers %d\n", build.n_layers);
    if (build.truncated) {
        std::printf("truncated 1\n");
    }
    return 0;
}

int run_sweep_cmd(const std::string& scenario_path, const std::string& mode, int from, int to,
                  const std::string& out) {
    const Scenario sc = load_scenario(scenario_path);
    SweepMode sweep_mode;
    if (mode == "fixture") {
        sweep_mode = SweepMode::fixture;
    } else if (mode == "single") {
        sweep_mode = SweepMode::single;
        if (to == 0) to = 20;
    } else {
        sweep_mode = SweepMode::mixed;
        if (to == 0) to = 13;
    }
    const std::vector<SweepRow> rows = run_sweep(sc, sweep_mode, from, to);
    emit_report(out, rows, nullptr, ReportFormat::csv);
    std::printf("rows %zu\n", rows.size());
    std::printf("csv %s\n", out.c_str());
    return 0;
}

int run_cost(const std::string& scenario_path, double v, double v_build, double t_build,
             int layers) {
    const Scenario sc = load_scenario(scenario_path);
    const int n_layers = layers >= 0 ? layers : sc.unit_layer_count();
    const double cb = build_cost(sc.profile, v_build, t_build);
    std::printf("c_build_eur %.2f\n", cb);
    std::printf("c_unit_eur %.2f\n", unit_cost(v, cb, sc.profile));
    std::printf("c_total_eur %.2f\n", total_unit_cost(v, cb, sc.profile, sc.failure, n_layers));
    return 0;
}

int run_compare(const std::string& scenario_path, const std::string& out) {
    const Scenario sc = load_scenario(scenario_path);
    const std::vector<SweepRow> rows = run_sweep(sc, SweepMode::fixture, 0, 0);
    const ComparisonReport rep = build_comparison(sc);
    if (!out.empty()) {
        emit_report(out, rows, &rep, ReportFormat::structured_text);
        std::printf("report %s\n", out.c_str());
    }
    std::ostringstream text;
    write_comparison_text(text, rep);
    std::fputs(text.str().c_str(), stdout);
    return 0;
}

int run_lifecycle(const std::string& scenario_path) {
    const Scenario sc = load_scenario(scenario_path);
    if (!sc.use_phase) {
        throw std::runtime_error("scenario has no [use_phase] section");
    }
    const ComparisonReport rep = build_comparison(sc);
    const LifecycleResult& lc = *rep.lifecycle;
    std::printf("s_energy_eur_per_year %.2f\n", lc.s_energy_eur_per_year);
    std::printf("ds_energy_eur %.2f\n", lc.ds_energy_eur);
    std::printf("manufacturing_delta_eur %.2f\n", lc.manufacturing_delta_eur);
    std::printf("theta_pct %.2f\n", lc.theta * 100.0);
    if (!lc.saving_positive) {
        std::printf("note use-phase power saving is not positive\n");
    }
    return 0;
}

int run_breakdown(const std::string& scenario_path, int count, const std::string& mode) {
    const Scenario sc = load_scenario(scenario_path);
    const int wanted = count > 0 ? count : sc.reference_count;
    const BuildMode buildmode = mode == "single" ? BuildMode::single : BuildMode::mixed;
    const int n_layers = sc.unit_layer_count();
    for (const SweepRow& row : load_sweep_fixture(sc.sweep_fixture)) {
        if (row.mode != buildmode || row.blower_count != wanted) {
            continue;
        }
        const CostBreakdown b =
            breakdown(row.v, row.v_build_cm3, row.t_build_h, sc.profile, sc.failure, n_layers);
        std::printf("breakdown %s count %d\n", mode.c_str(), wanted);
        std::printf("material_eur %.2f share_pct %.1f\n", b.material, 100.0 * b.shares.material);
        std::printf("setup_labour_eur %.2f share_pct %.1f\n", b.setup_labour,
                    100.0 * b.shares.setup_labour);
        std::printf("indirect_eur %.2f share_pct %.1f\n", b.indirect, 100.0 * b.shares.indirect);
        std::printf("energy_eur %.2f share_pct %.1f\n", b.energy, 100.0 * b.shares.energy);
        std::printf("postprocess_labour_eur %.2f share_pct %.1f\n", b.postprocess_labour,
                    100.0 * b.shares.postprocess_labour);
        std::printf("failure_premium_eur %.2f share_pct %.1f\n", b.failure_premium,
                    100.0 * b.shares.failure_premium);
        std::printf("c_unit_eur %.2f\n", b.c_unit);
        std::printf("c_total_eur %.2f\n", b.c_total);
        return 0;
    }
    throw std::runtime_error("no fixture row for mode " + mode + ", count " +
                             std::to_string(wanted));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity-aware cost estimation for powder-bed additive manufacturing"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string mode = "single";
    std::string out;
    int count = 1;
    int from = 1;
    int to = 0;
    double v = 1.0, v_build = 0.0, t_build = 0.0;
    int layers = -1;

    CLI::App* pack = app.add_subcommand("pack", "Pack a build volume and emit its manifest");
    pack->add_option("--scenario", scenario_path, "Scenario file")->required();
    pack->add_option("--mode", mode, "single or mixed")
        ->check(CLI::IsMember({"single", "mixed"}));
    pack->add_option("--count", count, "Number of unit parts");
    pack->add_option("--out", out, "Manifest path (stdout when omitted)");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a blower-count sweep and write the CSV");
    std::string sweep_mode = "fixture";
    std::string sweep_out = "sweep.csv";
    sweep->add_option("--scenario", scenario_path, "Scenario file")->required();
    sweep->add_option("--mode", sweep_mode, "fixture, single or mixed")
        ->check(CLI::IsMember({"fixture", "single", "mixed"}));
    sweep->add_option("--from", from, "First blower count (packing modes)");
    sweep->add_option("--to", to, "Last blower count (packing modes)");
    sweep->add_option("--out", sweep_out, "Output CSV path");

    CLI::App* cost = app.add_subcommand("cost", "Cost one build from explicit v, V_build, T_build");
    cost->add_option("--scenario", scenario_path, "Scenario file")->required();
    cost->add_option("--v", v, "Volume fraction of the unit part (0, 1]")->required();
    cost->add_option("--vbuild", v_build, "Deposited volume, cm3")->required();
    cost->add_option("--tbuild", t_build, "Build time, h")->required();
    cost->add_option("--layers", layers, "Layer count (scenario-derived when omitted)");

    CLI::App* comp = app.add_subcommand("compare", "Inter-process comparison over the fixture sweep");
    comp->add_option("--scenario", scenario_path, "Scenario file")->required();
    comp->add_option("--out", out, "Report path (structured text)");

    CLI::App* life = app.add_subcommand("lifecycle", "Use-phase savings and value share");
    life->add_option("--scenario", scenario_path, "Scenario file")->required();

    CLI::App* brk = app.add_subcommand("breakdown", "Unit cost decomposition of one fixture row");
    std::string brk_mode = "mixed";
    int brk_count = 0;
    brk->add_option("--scenario", scenario_path, "Scenario file")->required();
    brk->add_option("--count", brk_count, "Blower count (scenario reference when omitted)");
    brk->add_option("--mode", brk_mode, "mixed or single")
        ->check(CLI::IsMember({"mixed", "single"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (pack->parsed()) {
            return run_pack(scenario_path, mode, count, out);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(scenario_path, sweep_mode, from, to, sweep_out);
        }
        if (cost->parsed()) {
            return run_cost(scenario_path, v, v_build, t_build, layers);
        }
        if (comp->parsed()) {
            return run_compare(scenario_path, out);
        }
        if (life->parsed()) {
            return run_lifecycle(scenario_path);
        }
        if (brk->parsed()) {
            return run_breakdown(scenario_path, brk_count, brk_mode);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
