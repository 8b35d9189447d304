// Shared fixtures for the test suites: reference dataset rows frozen as
// arrays, the process profile and use-phase constants, and small mesh
// builders kept independent of the library's fixture generator.
#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "amcost/costing.hpp"
#include "amcost/geometry.hpp"
#include "amcost/lifecycle.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return AMCOST_DATA_DIR; }
inline std::filesystem::path scenario_path() { return data_dir() / "dmls_m270.scenario"; }

// count, V_build, T_build, dep rate, C_build, C_unit, C_total
using Row = std::array<double, 7>;

inline const std::vector<Row>& single_rows() {
    static const std::vector<Row> rows = {
        {1, 8.40, 8.86, 0.95, 284.27, 298.30, 448.19},
        {2, 16.80, 9.60, 1.75, 307.43, 167.74, 248.79},
        {3, 25.21, 10.35, 2.44, 330.58, 124.22, 182.33},
        {4, 33.61, 11.09, 3.03, 353.74, 102.46, 149.09},
        {5, 42.01, 11.83, 3.55, 376.89, 89.41, 129.15},
        {6, 50.41, 12.58, 4.01, 400.05, 80.70, 115.86},
        {7, 58.82, 13.32, 4.41, 423.20, 74.49, 106.36},
        {8, 67.22, 14.07, 4.78, 446.36, 69.82, 99.24},
        {9, 75.62, 14.81, 5.11, 469.51, 66.20, 93.70},
        {10, 84.02, 15.56, 5.40, 492.67, 63.30, 89.27},
        {11, 92.42, 16.30, 5.67, 515.82, 60.92, 85.65},
        {12, 100.83, 17.04, 5.92, 538.98, 58.94, 82.63},
        {13, 109.23, 17.79, 6.14, 562.13, 57.27, 80.07},
        {14, 117.63, 18.53, 6.35, 585.28, 55.84, 77.88},
        {15, 126.03, 19.28, 6.54, 608.44, 54.59, 75.98},
        {16, 134.44, 20.02, 6.71, 631.59, 53.50, 74.32},
        {17, 142.84, 20.77, 6.88, 654.75, 52.54, 72.85},
        {18, 151.24, 21.51, 7.03, 677.90, 51.69, 71.55},
        {19, 159.64, 22.25, 7.17, 701.06, 50.93, 70.38},
        {20, 168.04, 23.00, 7.31, 724.21, 50.24, 69.33},
    };
    return rows;
}

inline const std::vector<Row>& mixed_rows() {
    static const std::vector<Row> rows = {
        {1, 505.42, 53.38, 9.47, 1665.63, 41.72, 56.32},
        {2, 479.06, 50.99, 9.39, 1591.72, 41.95, 56.67},
        {3, 465.86, 49.82, 9.35, 1555.23, 42.08, 56.87},
        {4, 466.52, 49.87, 9.35, 1556.84, 42.07, 56.85},
        {5, 409.08, 44.71, 9.15, 1396.98, 42.72, 57.85},
        {6, 382.71, 42.34, 9.04, 1323.50, 43.09, 58.41},
        {7, 386.89, 42.71, 9.06, 1334.94, 43.02, 58.31},
        {8, 393.45, 43.29, 9.09, 1352.93, 42.92, 58.16},
        {9, 447.94, 48.16, 9.30, 1504.18, 42.24, 57.12},
        {10, 421.57, 45.79, 9.21, 1430.67, 42.54, 57.58},
        {11, 408.37, 44.60, 9.16, 1393.77, 42.71, 57.83},
        {12, 382.00, 42.23, 9.05, 1320.27, 43.07, 58.38},
        {13, 373.02, 41.41, 9.01, 1295.08, 43.20, 58.58},
    };
    return rows;
}

constexpr double kBlowerVolumeCm3 = 8.403;
constexpr double kBlowerHeightMm = 33.88;
constexpr double kLayerThicknessMm = 0.02;
constexpr int kLayers = 1694;

inline amcost::ProcessProfile reference_profile() {
    amcost::ProcessProfile p;
    p.p_material_eur_per_cm3 = 0.6916;
    p.setup_labour_eur = 72.04;
    p.indirect_rate_eur_per_h = 23.12;
    p.energy_price_eur_per_mj = 0.02;
    p.process_energy_mj_per_h = 9.18;
    p.energy_rate_eur_per_h = p.energy_price_eur_per_mj * p.process_energy_mj_per_h;
    p.labour_rate_eur_per_h = 22.75;
    p.t_process_h = 37.0 / 60.0;
    p.production_overhead_eur_per_h = 5.11;
    p.administration_overhead_eur_per_h = 0.35;
    p.machine_cost_rate_eur_per_h = 17.66;
    return p;
}

inline amcost::UsePhaseScenario reference_use_phase() {
    amcost::UsePhaseScenario u;
    u.power_conventional_w = 3000.0;
    u.power_am_w = 2490.0;
    u.annual_hours = 4048.0;
    u.lifetime_hours = 30000.0;
    u.depreciation_years = 7.411;
    u.use_energy_price_eur_per_mj = 0.03871839;
    u.discount_rate = 0.02;
    u.throughput_high_per_h = 40000.0;
    u.throughput_low_per_h = 8000.0;
    return u;
}

inline void append_box(amcost::TriangleMesh& mesh, const amcost::Vec3& lo,
                       const amcost::Vec3& hi) {
    const std::uint32_t base = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.push_back({lo.x, lo.y, lo.z});
    mesh.vertices.push_back({hi.x, lo.y, lo.z});
    mesh.vertices.push_back({hi.x, hi.y, lo.z});
    mesh.vertices.push_back({lo.x, hi.y, lo.z});
    mesh.vertices.push_back({lo.x, lo.y, hi.z});
    mesh.vertices.push_back({hi.x, lo.y, hi.z});
    mesh.vertices.push_back({hi.x, hi.y, hi.z});
    mesh.vertices.push_back({lo.x, hi.y, hi.z});
    const std::uint32_t f[12][3] = {
        {0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
        {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7},
    };
    for (const auto& tri : f) {
        mesh.triangles.push_back({base + tri[0], base + tri[1], base + tri[2]});
    }
}

inline amcost::TriangleMesh make_box_mesh(const std::string& name, double x, double y, double z) {
    amcost::TriangleMesh mesh;
    mesh.name = name;
    append_box(mesh, {0.0, 0.0, 0.0}, {x, y, z});
    return mesh;
}

inline amcost::TriangleMesh make_cube(double edge) { return make_box_mesh("cube", edge, edge, edge); }

inline bool throws_containing(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
    } catch (const std::exception& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace testsupport
