#include "amcost/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace amcost {

namespace {

constexpr double kEps = 1e-9;

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// Edge function for the 2D coverage test: positive on the interior side of
// a CCW edge.
double edge_fn(const Vec3& a, const Vec3& b, double px, double py) {
    return cross2(b.x - a.x, b.y - a.y, px - a.x, py - a.y);
}

// Rasterization tie-break: points exactly on a top or left edge of a CCW
// triangle count as covered, so adjacent triangles never double-count a
// shared edge.
bool is_top_left(const Vec3& a, const Vec3& b) {
    return (a.y == b.y && b.x < a.x) || (b.y < a.y);
}

}  // namespace

BoundingBox TriangleMesh::bounds() const {
    if (vertices.empty()) {
        throw std::runtime_error("bounds: empty mesh");
    }
    BoundingBox box;
    constexpr double inf = std::numeric_limits<double>::infinity();
    box.min = {inf, inf, inf};
    box.max = {-inf, -inf, -inf};
    for (const Vec3& v : vertices) {
        box.min.x = std::min(box.min.x, v.x);
        box.min.y = std::min(box.min.y, v.y);
        box.min.z = std::min(box.min.z, v.z);
        box.max.x = std::max(box.max.x, v.x);
        box.max.y = std::max(box.max.y, v.y);
        box.max.z = std::max(box.max.z, v.z);
    }
    return box;
}

TriangleMesh TriangleMesh::translated(const Vec3& offset) const {
    TriangleMesh out = *this;
    for (Vec3& v : out.vertices) {
        v = v + offset;
    }
    return out;
}

std::size_t VoxelGrid::occupied_count() const {
    std::size_t n = 0;
    for (std::uint8_t c : occupancy) {
        n += (c != 0);
    }
    return n;
}

double VoxelGrid::occupied_volume_cm3() const {
    const double cell_mm3 = resolution_mm * resolution_mm * resolution_mm;
    return static_cast<double>(occupied_count()) * cell_mm3 / 1000.0;
}

bool is_closed(const TriangleMesh& mesh) {
    if (mesh.triangles.empty()) {
        return false;
    }
    auto key = [](std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    std::unordered_map<std::uint64_t, int> edges;
    edges.reserve(mesh.triangles.size() * 3);
    for (const Triangle& t : mesh.triangles) {
        const std::uint32_t idx[3] = {t.a, t.b, t.c};
        for (int e = 0; e < 3; ++e) {
            if (++edges[key(idx[e], idx[(e + 1) % 3])] > 1) {
                return false;  // repeated directed edge: non-manifold
            }
        }
    }
    for (const auto& [k, n] : edges) {
        const std::uint32_t a = static_cast<std::uint32_t>(k >> 32);
        const std::uint32_t b = static_cast<std::uint32_t>(k & 0xffffffffu);
        auto rev = edges.find((static_cast<std::uint64_t>(b) << 32) | a);
        if (rev == edges.end()) {
            return false;
        }
    }
    return true;
}

double mesh_volume_cm3(const TriangleMesh& mesh) {
    if (!is_closed(mesh)) {
        throw std::runtime_error("mesh_volume: open mesh '" + mesh.name + "'");
    }
    double six_vol = 0.0;
    for (const Triangle& t : mesh.triangles) {
        const Vec3& v0 = mesh.vertices[t.a];
        const Vec3& v1 = mesh.vertices[t.b];
        const Vec3& v2 = mesh.vertices[t.c];
        six_vol += v0.x * (v1.y * v2.z - v1.z * v2.y) -
                   v0.y * (v1.x * v2.z - v1.z * v2.x) +
                   v0.z * (v1.x * v2.y - v1.y * v2.x);
    }
    return six_vol / 6.0 / 1000.0;  // mm3 -> cm3
}

double part_height_mm(const TriangleMesh& mesh) {
    return mesh.bounds().extent_z();
}

namespace {

VoxelGrid voxelize_impl(const TriangleMesh& mesh, double resolution_mm, const Vec3& origin) {
    if (!(resolution_mm > 0.0)) {
        throw std::invalid_argument("voxelize: resolution must be > 0");
    }
    if (!is_closed(mesh)) {
        throw std::runtime_error("voxelize: open mesh '" + mesh.name + "'");
    }
    const BoundingBox box = mesh.bounds();

    VoxelGrid grid;
    grid.resolution_mm = resolution_mm;
    grid.origin = origin;
    const double extents[3] = {box.max.x - origin.x, box.max.y - origin.y, box.max.z - origin.z};
    for (int axis = 0; axis < 3; ++axis) {
        const int d = static_cast<int>(std::ceil(extents[axis] / resolution_mm - kEps));
        if (d <= 0) {
            throw std::runtime_error("voxelize: grid collapsed to zero on an axis");
        }
        grid.dims[axis] = d;
    }
    grid.occupancy.assign(static_cast<std::size_t>(grid.dims[0]) * grid.dims[1] * grid.dims[2], 0);

    // Column scan: for each (x, y) voxel-center column collect the z values
    // where the vertical ray crosses the surface, then fill alternate
    // [z_i, z_i+1) spans. Vertical triangles project to zero area and are
    // skipped; the ray is parallel to them.
    std::vector<double> crossings;
    for (int j = 0; j < grid.dims[1]; ++j) {
        const double cy = origin.y + (j + 0.5) * resolution_mm;
        for (int i = 0; i < grid.dims[0]; ++i) {
            const double cx = origin.x + (i + 0.5) * resolution_mm;
            crossings.clear();
            for (const Triangle& t : mesh.triangles) {
                Vec3 a = mesh.vertices[t.a];
                Vec3 b = mesh.vertices[t.b];
                Vec3 c = mesh.vertices[t.c];
                double area2 = cross2(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y);
                if (area2 == 0.0) {
                    continue;
                }
                if (area2 < 0.0) {
                    std::swap(b, c);
                    area2 = -area2;
                }
                const double w0 = edge_fn(b, c, cx, cy);
                const double w1 = edge_fn(c, a, cx, cy);
                const double w2 = edge_fn(a, b, cx, cy);
                const bool in0 = w0 > 0.0 || (w0 == 0.0 && is_top_left(b, c));
                const bool in1 = w1 > 0.0 || (w1 == 0.0 && is_top_left(c, a));
                const bool in2 = w2 > 0.0 || (w2 == 0.0 && is_top_left(a, b));
                if (in0 && in1 && in2) {
                    crossings.push_back((w0 * a.z + w1 * b.z + w2 * c.z) / area2);
                }
            }
            std::sort(crossings.begin(), crossings.end());
            const std::size_t pairs = crossings.size() / 2;
            for (std::size_t p = 0; p < pairs; ++p) {
                const double z0 = crossings[2 * p];
                const double z1 = crossings[2 * p + 1];
                for (int k = 0; k < grid.dims[2]; ++k) {
                    const double cz = origin.z + (k + 0.5) * resolution_mm;
                    if (cz >= z0 && cz < z1) {
                        grid.occupancy[static_cast<std::size_t>(i) +
                                       static_cast<std::size_t>(grid.dims[0]) *
                                           (static_cast<std::size_t>(j) +
                                            static_cast<std::size_t>(grid.dims[1]) *
                                                static_cast<std::size_t>(k))] = 1;
                    }
                }
            }
        }
    }
    return grid;
}

}  // namespace

VoxelGrid voxelize(const TriangleMesh& mesh, double resolution_mm) {
    if (!(resolution_mm > 0.0)) {
        throw std::invalid_argument("voxelize: resolution must be > 0");
    }
    return voxelize_impl(mesh, resolution_mm, mesh.bounds().min);
}

VoxelGrid voxelize_on_lattice(const TriangleMesh& mesh, double resolution_mm) {
    if (!(resolution_mm > 0.0)) {
        throw std::invalid_argument("voxelize: resolution must be > 0");
    }
    const Vec3 lo = mesh.bounds().min;
    const Vec3 origin = {std::floor(lo.x / resolution_mm) * resolution_mm,
                         std::floor(lo.y / resolution_mm) * resolution_mm,
                         std::floor(lo.z / resolution_mm) * resolution_mm};
    return voxelize_impl(mesh, resolution_mm, origin);
}

PartSpec make_part_spec(TriangleMesh mesh, PartRole role) {
    PartSpec spec;
    spec.name = mesh.name;
    spec.role = role;
    spec.footprint = mesh.bounds();
    spec.deposited_volume_cm3 = mesh_volume_cm3(mesh);
    spec.mesh = std::move(mesh);
    if (!(spec.deposited_volume_cm3 > 0.0)) {
        throw std::runtime_error("part '" + spec.name + "': non-positive deposited volume");
    }
    return spec;
}

}  // namespace amcost
