// Regenerates the surrogate part fixtures shipped under data/. The blower
// surrogate is a base slab plus a column whose cross-section is solved so
// the analytic volume lands exactly on 8.403 cm3 at a height of 33.88 mm;
// its 50 x 40 footprint packs as a 4 x 5 grid on the default plate.
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "amcost/geometry.hpp"
#include "amcost/stl_io.hpp"

namespace {

using amcost::TriangleMesh;
using amcost::Vec3;

void append_box(TriangleMesh& mesh, const Vec3& lo, const Vec3& hi) {
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
        {0, 2, 1}, {0, 3, 2},  // bottom
        {4, 5, 6}, {4, 6, 7},  // top
        {0, 1, 5}, {0, 5, 4},  // -y
        {1, 2, 6}, {1, 6, 5},  // +x
        {2, 3, 7}, {2, 7, 6},  // +y
        {3, 0, 4}, {3, 4, 7},  // -x
    };
    for (const auto& tri : f) {
        mesh.triangles.push_back({base + tri[0], base + tri[1], base + tri[2]});
    }
}

TriangleMesh make_box(const char* name, double x, double y, double z) {
    TriangleMesh mesh;
    mesh.name = name;
    append_box(mesh, {0, 0, 0}, {x, y, z});
    return mesh;
}

TriangleMesh make_blower_surrogate() {
    constexpr double kTargetVolumeMm3 = 8403.0;
    constexpr double kHeight = 33.88;
    constexpr double kBaseX = 50.0, kBaseY = 40.0, kBaseZ = 3.0;
    constexpr double kColumnX = 10.0;

    TriangleMesh mesh;
    mesh.name = "blower_surrogate";
    append_box(mesh, {0, 0, 0}, {kBaseX, kBaseY, kBaseZ});
    const double column_height = kHeight - kBaseZ;
    const double column_y = (kTargetVolumeMm3 - kBaseX * kBaseY * kBaseZ) /
                            (kColumnX * column_height);
    append_box(mesh, {20.0, 20.0 - column_y / 2.0, kBaseZ},
               {20.0 + kColumnX, 20.0 + column_y / 2.0, kHeight});
    return mesh;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: genfixtures <output-dir>\n");
        return 2;
    }
    try {
        const std::filesystem::path dir = argv[1];
        std::filesystem::create_directories(dir);

        const TriangleMesh blower = make_blower_surrogate();
        amcost::write_stl(blower, dir / "blower_surrogate.stl", amcost::StlFormat::text);
        std::printf("blower_surrogate volume_cm3 %.12f height_mm %.6f\n",
                    amcost::mesh_volume_cm3(blower), amcost::part_height_mm(blower));

        const struct {
            const char* name;
            double x, y, z;
        } refs[] = {
            {"ref_bracket_large", 30.0, 30.0, 20.0},
            {"ref_manifold_block", 35.0, 25.0, 15.0},
            {"ref_nozzle_block", 25.0, 25.0, 12.0},
            {"ref_clamp_small", 20.0, 20.0, 10.0},
        };
        for (const auto& r : refs) {
            const TriangleMesh mesh = make_box(r.name, r.x, r.y, r.z);
            amcost::write_stl(mesh, dir / (std::string(r.name) + ".stl"),
                              amcost::StlFormat::text);
            std::printf("%s volume_cm3 %.6f\n", r.name, amcost::mesh_volume_cm3(mesh));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
