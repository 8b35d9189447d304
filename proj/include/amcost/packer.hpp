// Build volume packing: fills a machine plate with required part instances
// and, in mixed mode, with reference-basket filler parts. Parts keep their
// build orientation and sit directly on the plate (no stacking).
#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "amcost/geometry.hpp"

namespace amcost {

struct BuildVolume {
    double x_mm = 250.0;
    double y_mm = 250.0;
    double z_mm = 215.0;
    double spacing_mm = 5.0;  // clearance between footprints and to walls
};

enum class BuildMode { single, mixed };

struct PartInstance {
    std::size_t part_index{};  // into PackedBuild::parts
    Vec3 position;             // translation applied to the part mesh
};

struct PackedBuild {
    std::vector<PartSpec> parts;
    std::vector<PartInstance> instances;
    BuildMode mode = BuildMode::single;
    double v_build_cm3 = 0.0;  // sum of instance deposited volumes
    double height_mm = 0.0;    // tallest placed part
    int n_layers = 0;
    bool truncated = false;  // requested quantity exceeded capacity

    const PartSpec& part_of(const PartInstance& inst) const { return parts[inst.part_index]; }
};

// ceil(height / layer_thickness); zero only for empty builds.
int compute_layers(double height_mm, double layer_thickness_mm);

// Places up to `quantity` instances of one part by a deterministic
// bottom-left first-fit sweep over a placement lattice. Throws if the part
// cannot fit an empty plate; flags truncation when capacity runs out.
PackedBuild pack_single(const PartSpec& part, int quantity, const BuildVolume& bv,
                        double layer_thickness_mm, double lattice_pitch_mm = 1.0);

// Places all required instances first, then one of each basket part, then
// fills the remaining space round-robin over the basket (sorted by
// descending footprint area, ties by name) until nothing fits.
PackedBuild pack_mixed(const std::vector<std::pair<PartSpec, int>>& required,
                       const std::vector<PartSpec>& basket, const BuildVolume& bv,
                       double layer_thickness_mm, double lattice_pitch_mm = 1.0);

// Structured-text manifest: per-instance part name, position and deposited
// volume plus build totals. Byte-stable for identical inputs.
void write_manifest(const PackedBuild& build, std::ostream& os);

}  // namespace amcost
