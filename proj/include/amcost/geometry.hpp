// Triangle meshes, exact volumes, and voxel occupancy grids for build
// volume packing and deposited-volume accounting. Units are millimetres
// throughout; volumes are reported in cm3.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace amcost {

struct Vec3 {
    double x{};
    double y{};
    double z{};
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

struct Triangle {
    std::uint32_t a{};
    std::uint32_t b{};
    std::uint32_t c{};
};

struct BoundingBox {
    Vec3 min;
    Vec3 max;

    double extent_x() const { return max.x - min.x; }
    double extent_y() const { return max.y - min.y; }
    double extent_z() const { return max.z - min.z; }
};

// Indexed triangle soup. Vertices are deduplicated on load; triangles are
// assumed consistently outward-oriented for volume queries.
struct TriangleMesh {
    std::string name;
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;

    bool empty() const { return triangles.empty(); }
    BoundingBox bounds() const;
    TriangleMesh translated(const Vec3& offset) const;
};

// Regular occupancy grid over a mesh bounding region. Linear index order is
// x-fastest: i + dims[0] * (j + dims[1] * k).
struct VoxelGrid {
    double resolution_mm{};
    std::array<int, 3> dims{};
    Vec3 origin;
    std::vector<std::uint8_t> occupancy;

    std::size_t cell_count() const { return occupancy.size(); }
    bool at(int i, int j, int k) const {
        return occupancy[static_cast<std::size_t>(i) +
                         static_cast<std::size_t>(dims[0]) *
                             (static_cast<std::size_t>(j) +
                              static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(k))] != 0;
    }
    std::size_t occupied_count() const;
    double occupied_volume_cm3() const;
};

// True iff every directed edge is matched by its reverse exactly once
// (closed, consistently oriented, possibly multi-shell).
bool is_closed(const TriangleMesh& mesh);

// Signed tetrahedron sum in cm3. Throws if the mesh is open; positive for
// outward-oriented shells.
double mesh_volume_cm3(const TriangleMesh& mesh);

// Extent along the build (z) axis in the part's fixed build orientation.
double part_height_mm(const TriangleMesh& mesh);

// Center-containment voxelization: a voxel is occupied iff its center lies
// inside the mesh. Deterministic; requires a closed mesh. Grid origin sits at
// the mesh bounding-box minimum.
VoxelGrid voxelize(const TriangleMesh& mesh, double resolution_mm);

// Same test with the grid origin snapped down to the global lattice
// (multiples of the resolution), so occupancy of translated instances can be
// compared cell-for-cell on a shared grid.
VoxelGrid voxelize_on_lattice(const TriangleMesh& mesh, double resolution_mm);

enum class PartRole { required, reference };

// A packable part: geometry plus the deposited volume (part and sacrificial
// supports) it contributes to a build.
struct PartSpec {
    TriangleMesh mesh;
    std::string name;
    PartRole role = PartRole::required;
    double deposited_volume_cm3 = 0.0;
    BoundingBox footprint;

    double footprint_x_mm() const { return footprint.extent_x(); }
    double footprint_y_mm() const { return footprint.extent_y(); }
    double height_mm() const { return footprint.extent_z(); }
};

// Computes deposited volume and footprint from the mesh. Volume or height
// overrides (e.g. from a scenario file) can be assigned afterwards.
PartSpec make_part_spec(TriangleMesh mesh, PartRole role);

}  // namespace amcost
