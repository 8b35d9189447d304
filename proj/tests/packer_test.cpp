#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "amcost/packer.hpp"
#include "amcost/stl_io.hpp"
#include "support.hpp"

using namespace amcost;
using namespace testsupport;

namespace {

PartSpec blower_part() {
    static const PartSpec spec = [] {
        TriangleMesh mesh = load_mesh(data_dir() / "blower_surrogate.stl");
        mesh.name = "blower";
        return make_part_spec(std::move(mesh), PartRole::required);
    }();
    return spec;
}

std::vector<PartSpec> reference_basket() {
    std::vector<PartSpec> basket;
    for (const char* name :
         {"ref_bracket_large", "ref_manifold_block", "ref_nozzle_block", "ref_clamp_small"}) {
        basket.push_back(
            make_part_spec(load_mesh(data_dir() / (std::string(name) + ".stl")),
                           PartRole::reference));
    }
    return basket;
}

// Independent capacity count: a bottom-left sweep of one footprint reduces to
// a w+s by d+s grid inside the walls.
int grid_capacity(const BuildVolume& bv, double w, double d) {
    const int nx = static_cast<int>(std::floor((bv.x_mm - bv.spacing_mm) / (w + bv.spacing_mm) + 1e-9));
    const int ny = static_cast<int>(std::floor((bv.y_mm - bv.spacing_mm) / (d + bv.spacing_mm) + 1e-9));
    return nx * ny;
}

std::string manifest_string(const PackedBuild& build) {
    std::ostringstream os;
    write_manifest(build, os);
    return os.str();
}

int count_named(const PackedBuild& build, const std::string& name) {
    int n = 0;
    for (const PartInstance& inst : build.instances) {
        if (build.part_of(inst).name == name) {
            ++n;
        }
    }
    return n;
}

}  // namespace

TEST_CASE("compute_layers") {
    CHECK(compute_layers(33.88, 0.02) == 1694);
    CHECK(compute_layers(0.0, 0.02) == 0);
    CHECK(compute_layers(0.001, 0.02) == 1);
    CHECK_THROWS_AS(compute_layers(10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_layers(-1.0, 0.02), std::invalid_argument);
}

TEST_CASE("pack_single places one blower") {
    const BuildVolume bv;
    const PackedBuild build = pack_single(blower_part(), 1, bv, kLayerThicknessMm);
    CHECK(build.instances.size() == 1);
    CHECK(build.mode == BuildMode::single);
    CHECK(!build.truncated);
    CHECK(build.v_build_cm3 == doctest::Approx(kBlowerVolumeCm3).epsilon(1e-12));
    CHECK(std::abs(build.v_build_cm3 - 8.40) <= 0.01);
    CHECK(build.n_layers == 1694);
}

TEST_CASE("pack_single fills the plate with exactly twenty blowers") {
    const BuildVolume bv;
    const PartSpec blower = blower_part();
    CHECK(grid_capacity(bv, blower.footprint_x_mm(), blower.footprint_y_mm()) == 20);

    const PackedBuild full = pack_single(blower, 20, bv, kLayerThicknessMm);
    CHECK(full.instances.size() == 20);
    CHECK(!full.truncated);
    CHECK(std::abs(full.v_build_cm3 - 168.04) <= 0.05);

    const PackedBuild over = pack_single(blower, 999, bv, kLayerThicknessMm);
    CHECK(over.instances.size() == 20);
    CHECK(over.truncated);
}

TEST_CASE("pack_single rejects impossible parts and quantities") {
    const BuildVolume bv;
    CHECK_THROWS_AS(pack_single(blower_part(), 0, bv, kLayerThicknessMm), std::invalid_argument);
    const PartSpec huge = make_part_spec(make_box_mesh("slab", 260.0, 40.0, 10.0),
                                         PartRole::required);
    CHECK(throws_containing([&] { pack_single(huge, 1, bv, kLayerThicknessMm); }, "slab"));
    const PartSpec tall = make_part_spec(make_box_mesh("tower", 40.0, 40.0, 230.0),
                                         PartRole::required);
    CHECK_THROWS_AS(pack_single(tall, 1, bv, kLayerThicknessMm), std::runtime_error);
}

TEST_CASE("pack_mixed keeps one of each basket part") {
    const BuildVolume bv;
    const PackedBuild build =
        pack_mixed({{blower_part(), 4}}, reference_basket(), bv, kLayerThicknessMm);
    CHECK(build.mode == BuildMode::mixed);
    CHECK(build.instances.size() >= 8);
    CHECK(count_named(build, "blower") == 4);
    for (const char* name :
         {"ref_bracket_large", "ref_manifold_block", "ref_nozzle_block", "ref_clamp_small"}) {
        CHECK(count_named(build, name) >= 1);
    }
}

TEST_CASE("thirteen blowers plus the basket stay feasible") {
    const BuildVolume bv;
    const PackedBuild build =
        pack_mixed({{blower_part(), 13}}, reference_basket(), bv, kLayerThicknessMm);
    CHECK(count_named(build, "blower") == 13);
    CHECK(build.height_mm == doctest::Approx(kBlowerHeightMm));
    CHECK(build.n_layers == 1694);
}

TEST_CASE("pack_mixed with no required parts is a pure fill") {
    const BuildVolume bv;
    const PackedBuild build = pack_mixed({}, reference_basket(), bv, kLayerThicknessMm);
    CHECK(count_named(build, "blower") == 0);
    for (const char* name :
         {"ref_bracket_large", "ref_manifold_block", "ref_nozzle_block", "ref_clamp_small"}) {
        CHECK(count_named(build, name) >= 1);
    }
}

TEST_CASE("infeasible required set names the part") {
    const BuildVolume bv;
    const PartSpec huge = make_part_spec(make_box_mesh("girder", 300.0, 40.0, 10.0),
                                         PartRole::required);
    CHECK(throws_containing(
        [&] { pack_mixed({{huge, 1}}, reference_basket(), bv, kLayerThicknessMm); }, "girder"));
    CHECK_THROWS_AS(pack_mixed({{blower_part(), 1}}, {}, bv, kLayerThicknessMm),
                    std::invalid_argument);
}

TEST_CASE("mixed build deposits at least the required and one-each volumes") {
    const BuildVolume bv;
    const std::vector<PartSpec> basket = reference_basket();
    const PackedBuild build = pack_mixed({{blower_part(), 4}}, basket, bv, kLayerThicknessMm);
    double floor_volume = 4 * kBlowerVolumeCm3;
    for (const PartSpec& part : basket) {
        floor_volume += part.deposited_volume_cm3;
    }
    CHECK(build.v_build_cm3 >= floor_volume - 1e-9);

    double sum = 0.0;
    for (const PartInstance& inst : build.instances) {
        sum += build.part_of(inst).deposited_volume_cm3;
    }
    CHECK(build.v_build_cm3 == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("placement respects walls, spacing and voxel disjointness") {
    const BuildVolume bv{120.0, 120.0, 215.0, 5.0};
    const PackedBuild build =
        pack_mixed({{blower_part(), 1}}, reference_basket(), bv, kLayerThicknessMm);

    struct Rect {
        double x0, y0, x1, y1;
    };
    std::vector<Rect> rects;
    for (const PartInstance& inst : build.instances) {
        const PartSpec& part = build.part_of(inst);
        const double x0 = part.footprint.min.x + inst.position.x;
        const double y0 = part.footprint.min.y + inst.position.y;
        rects.push_back({x0, y0, x0 + part.footprint_x_mm(), y0 + part.footprint_y_mm()});
        CHECK(x0 >= bv.spacing_mm - 1e-9);
        CHECK(y0 >= bv.spacing_mm - 1e-9);
        CHECK(rects.back().x1 <= bv.x_mm - bv.spacing_mm + 1e-9);
        CHECK(rects.back().y1 <= bv.y_mm - bv.spacing_mm + 1e-9);
        CHECK(part.height_mm() <= bv.z_mm + 1e-9);
    }
    for (std::size_t i = 0; i < rects.size(); ++i) {
        for (std::size_t j = i + 1; j < rects.size(); ++j) {
            const bool separated_x =
                rects[i].x1 + bv.spacing_mm <= rects[j].x0 + 1e-9 ||
                rects[j].x1 + bv.spacing_mm <= rects[i].x0 + 1e-9;
            const bool separated_y =
                rects[i].y1 + bv.spacing_mm <= rects[j].y0 + 1e-9 ||
                rects[j].y1 + bv.spacing_mm <= rects[i].y0 + 1e-9;
            CHECK((separated_x || separated_y));
        }
    }

    // Voxel intersection on the shared lattice.
    std::set<std::uint64_t> cells;
    for (const PartInstance& inst : build.instances) {
        const VoxelGrid grid =
            voxelize_on_lattice(build.part_of(inst).mesh.translated(inst.position), 1.0);
        const long ox = std::lround(grid.origin.x), oy = std::lround(grid.origin.y),
                   oz = std::lround(grid.origin.z);
        for (int k = 0; k < grid.dims[2]; ++k) {
            for (int j = 0; j < grid.dims[1]; ++j) {
                for (int i = 0; i < grid.dims[0]; ++i) {
                    if (!grid.at(i, j, k)) continue;
                    const std::uint64_t key = (static_cast<std::uint64_t>(i + ox + 512) << 40) |
                                              (static_cast<std::uint64_t>(j + oy + 512) << 20) |
                                              static_cast<std::uint64_t>(k + oz + 512);
                    CHECK(cells.insert(key).second);
                }
            }
        }
    }
}

TEST_CASE("capacity is monotone in plate size and spacing") {
    const PartSpec blower = blower_part();
    auto capacity = [&](double plate, double spacing) {
        BuildVolume bv{plate, plate, 215.0, spacing};
        return pack_single(blower, 999, bv, kLayerThicknessMm).instances.size();
    };
    CHECK(capacity(200.0, 5.0) <= capacity(250.0, 5.0));
    CHECK(capacity(250.0, 5.0) <= capacity(300.0, 5.0));
    CHECK(capacity(250.0, 10.0) <= capacity(250.0, 5.0));
    CHECK(capacity(250.0, 5.0) <= capacity(250.0, 0.0));
}

TEST_CASE("manifests are byte-identical for identical inputs") {
    const BuildVolume bv;
    const auto basket = reference_basket();
    const std::string a =
        manifest_string(pack_mixed({{blower_part(), 6}}, basket, bv, kLayerThicknessMm));
    const std::string b =
        manifest_string(pack_mixed({{blower_part(), 6}}, basket, bv, kLayerThicknessMm));
    CHECK(a == b);
    CHECK(a.find("mode mixed") != std::string::npos);
    CHECK(a.find("n_layers 1694") != std::string::npos);
}

TEST_CASE("height and layer count are constant across mixed sweep counts") {
    const BuildVolume bv;
    const auto basket = reference_basket();
    for (int count = 1; count <= 5; ++count) {
        const PackedBuild build =
            pack_mixed({{blower_part(), count}}, basket, bv, kLayerThicknessMm);
        CHECK(build.height_mm == doctest::Approx(kBlowerHeightMm));
        CHECK(build.n_layers == 1694);
    }
}
