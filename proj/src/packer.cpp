#include "amcost/packer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace amcost {

namespace {

constexpr double kEps = 1e-9;

struct Rect {
    double x0, y0, x1, y1;
};

// Clearance rule: a placement conflicts when the candidate inflated by the
// spacing still overlaps an existing footprint, i.e. the parts are separated
// by at least the spacing along some axis.
bool conflicts(const Rect& cand, const std::vector<Rect>& placed, double spacing) {
    for (const Rect& r : placed) {
        if (cand.x0 - spacing < r.x1 && r.x0 < cand.x1 + spacing && cand.y0 - spacing < r.y1 &&
            r.y0 < cand.y1 + spacing) {
            return true;
        }
    }
    return false;
}

bool part_fits_volume(const PartSpec& part, const BuildVolume& bv) {
    return part.footprint_x_mm() <= bv.x_mm - 2.0 * bv.spacing_mm + kEps &&
           part.footprint_y_mm() <= bv.y_mm - 2.0 * bv.spacing_mm + kEps &&
           part.height_mm() <= bv.z_mm + kEps;
}

// Bottom-left first fit over the placement lattice. Returns the footprint
// anchor (min corner), or nothing if the part fits nowhere.
std::optional<Rect> find_position(const PartSpec& part, const std::vector<Rect>& placed,
                                  const BuildVolume& bv, double pitch) {
    const double w = part.footprint_x_mm();
    const double d = part.footprint_y_mm();
    const double s = bv.spacing_mm;
    for (int iy = 0;; ++iy) {
        const double y = s + iy * pitch;
        if (y + d > bv.y_mm - s + kEps) {
            break;
        }
        for (int ix = 0;; ++ix) {
            const double x = s + ix * pitch;
            if (x + w > bv.x_mm - s + kEps) {
                break;
            }
            const Rect cand{x, y, x + w, y + d};
            if (!conflicts(cand, placed, s)) {
                return cand;
            }
        }
    }
    return std::nullopt;
}

struct Placer {
    const BuildVolume& bv;
    double pitch;
    std::vector<Rect> placed;
    PackedBuild build;

    bool try_place(std::size_t part_index) {
        const PartSpec& part = build.parts[part_index];
        auto rect = find_position(part, placed, bv, pitch);
        if (!rect) {
            return false;
        }
        placed.push_back(*rect);
        PartInstance inst;
        inst.part_index = part_index;
        inst.position = {rect->x0 - part.footprint.min.x, rect->y0 - part.footprint.min.y,
                         -part.footprint.min.z};
        build.instances.push_back(inst);
        build.v_build_cm3 += part.deposited_volume_cm3;
        build.height_mm = std::max(build.height_mm, part.height_mm());
        return true;
    }
};

}  // namespace

int compute_layers(double height_mm, double layer_thickness_mm) {
    if (!(layer_thickness_mm > 0.0)) {
        throw std::invalid_argument("compute_layers: layer thickness must be > 0");
    }
    if (height_mm < 0.0) {
        throw std::invalid_argument("compute_layers: negative height");
    }
    const int n = static_cast<int>(std::ceil(height_mm / layer_thickness_mm - kEps));
    return std::max(n, 0);
}

PackedBuild pack_single(const PartSpec& part, int quantity, const BuildVolume& bv,
                        double layer_thickness_mm, double lattice_pitch_mm) {
    if (quantity < 1) {
        throw std::invalid_argument("pack_single: quantity must be >= 1");
    }
    if (!part_fits_volume(part, bv)) {
        throw std::runtime_error("pack_single: part '" + part.name +
                                 "' does not fit the build volume");
    }
    Placer placer{bv, lattice_pitch_mm, {}, {}};
    placer.build.mode = BuildMode::single;
    placer.build.parts.push_back(part);
    int placed = 0;
    while (placed < quantity && placer.try_place(0)) {
        ++placed;
    }
    placer.build.truncated = placed < quantity;
    placer.build.n_layers = compute_layers(placer.build.height_mm, layer_thickness_mm);
    return placer.build;
}

PackedBuild pack_mixed(const std::vector<std::pair<PartSpec, int>>& required,
                       const std::vector<PartSpec>& basket, const BuildVolume& bv,
                       double layer_thickness_mm, double lattice_pitch_mm) {
    if (basket.empty()) {
        throw std::invalid_argument("pack_mixed: basket must be non-empty");
    }
    Placer placer{bv, lattice_pitch_mm, {}, {}};
    placer.build.mode = BuildMode::mixed;

    for (const auto& [part, count] : required) {
        if (!part_fits_volume(part, bv)) {
            throw std::runtime_error("pack_mixed: required part '" + part.name +
                                     "' does not fit the build volume");
        }
        placer.build.parts.push_back(part);
        for (int i = 0; i < count; ++i) {
            if (!placer.try_place(placer.build.parts.size() - 1)) {
                throw std::runtime_error("pack_mixed: required part '" + part.name +
                                         "' does not fit (placed " + std::to_string(i) + " of " +
                                         std::to_string(count) + ")");
            }
        }
    }

    // Fill order: descending footprint area, ties by name.
    std::vector<std::size_t> order;
    for (const PartSpec& part : basket) {
        placer.build.parts.push_back(part);
        order.push_back(placer.build.parts.size() - 1);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const PartSpec& a = placer.build.parts[l];
        const PartSpec& b = placer.build.parts[r];
        const double area_a = a.footprint_x_mm() * a.footprint_y_mm();
        const double area_b = b.footprint_x_mm() * b.footprint_y_mm();
        if (area_a != area_b) return area_a > area_b;
        return a.name < b.name;
    });
    for (std::size_t idx : order) {
        if (!part_fits_volume(placer.build.parts[idx], bv) || !placer.try_place(idx)) {
            throw std::runtime_error("pack_mixed: basket part '" + placer.build.parts[idx].name +
                                     "' does not fit (one of each is required)");
        }
    }
    // Round-robin fill; parts drop out of the rotation once they stop fitting.
    std::vector<std::size_t> rotation = order;
    while (!rotation.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t idx : rotation) {
            if (placer.try_place(idx)) {
                next.push_back(idx);
            }
        }
        rotation = std::move(next);
    }

    placer.build.n_layers = compute_layers(placer.build.height_mm, layer_thickness_mm);
    return placer.build;
}

void write_manifest(const PackedBuild& build, std::ostream& os) {
    char line[256];
    os << "# build manifest\n";
    os << "mode " << (build.mode == BuildMode::single ? "single" : "mixed") << "\n";
    os << "instances " << build.instances.size() << "\n";
    for (const PartInstance& inst : build.instances) {
        const PartSpec& part = build.part_of(inst);
        std::snprintf(line, sizeof(line), "instance %s %.3f %.3f %.3f %.6f\n", part.name.c_str(),
                      inst.position.x, inst.position.y, inst.position.z,
                      part.deposited_volume_cm3);
        os << line;
    }
    std::snprintf(line, sizeof(line), "v_build_cm3 %.6f\n", build.v_build_cm3);
    os << line;
    std::snprintf(line, sizeof(line), "height_mm %.3f\n", build.height_mm);
    os << line;
    os << "n_layers " << build.n_layers << "\n";
    os << "truncated " << (build.truncated ? 1 : 0) << "\n";
}

}  // namespace amcost
