#include "amcost/stl_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace amcost {

namespace {

constexpr std::size_t kBinaryHeader = 80;
constexpr std::size_t kBinaryRecord = 50;  // 12 floats + 2 attribute bytes

struct VertexKey {
    double x, y, z;
    bool operator<(const VertexKey& o) const {
        if (x != o.x) return x < o.x;
        if (y != o.y) return y < o.y;
        return z < o.z;
    }
};

// Exact-coordinate dedup; binary STL repeats every vertex per facet.
class MeshBuilder {
public:
    std::uint32_t add_vertex(double x, double y, double z) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw std::runtime_error("malformed record: non-finite vertex coordinate");
        }
        const VertexKey key{x, y, z};
        auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(mesh_.vertices.size()));
        if (inserted) {
            mesh_.vertices.push_back({x, y, z});
        }
        return it->second;
    }

    void add_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        if (a == b || b == c || a == c) {
            return;  // collapsed after dedup
        }
        const Vec3 e1 = mesh_.vertices[b] - mesh_.vertices[a];
        const Vec3 e2 = mesh_.vertices[c] - mesh_.vertices[a];
        const double nx = e1.y * e2.z - e1.z * e2.y;
        const double ny = e1.z * e2.x - e1.x * e2.z;
        const double nz = e1.x * e2.y - e1.y * e2.x;
        if (nx == 0.0 && ny == 0.0 && nz == 0.0) {
            return;  // zero-area
        }
        mesh_.triangles.push_back({a, b, c});
    }

    TriangleMesh take(std::string name) {
        mesh_.name = std::move(name);
        if (mesh_.triangles.empty()) {
            throw std::runtime_error("empty mesh: " + mesh_.name);
        }
        if (mesh_.triangles.size() < 4) {
            throw std::runtime_error("degenerate mesh (fewer than 4 triangles): " + mesh_.name);
        }
        return std::move(mesh_);
    }

private:
    TriangleMesh mesh_;
    std::map<VertexKey, std::uint32_t> index_;
};

float read_f32(const char* p) {
    float f;
    std::memcpy(&f, p, sizeof(f));
    return f;
}

TriangleMesh load_binary(const std::string& data, const std::string& name) {
    std::uint32_t count;
    std::memcpy(&count, data.data() + kBinaryHeader, sizeof(count));
    if (data.size() != kBinaryHeader + 4 + static_cast<std::size_t>(count) * kBinaryRecord) {
        throw std::runtime_error("malformed record: truncated binary facet data in " + name);
    }
    MeshBuilder builder;
    const char* p = data.data() + kBinaryHeader + 4;
    for (std::uint32_t i = 0; i < count; ++i, p += kBinaryRecord) {
        std::array<std::uint32_t, 3> idx;
        for (int v = 0; v < 3; ++v) {
            const char* vp = p + 12 + v * 12;  // skip the normal
            idx[v] = builder.add_vertex(read_f32(vp), read_f32(vp + 4), read_f32(vp + 8));
        }
        builder.add_triangle(idx[0], idx[1], idx[2]);
    }
    return builder.take(name);
}

TriangleMesh load_text(const std::string& data, const std::string& name) {
    std::istringstream in(data);
    std::string tok;
    if (!(in >> tok) || tok != "solid") {
        throw std::runtime_error("malformed record: missing 'solid' header in " + name);
    }
    std::string line;
    std::getline(in, line);  // solid name, ignored

    MeshBuilder builder;
    auto expect = [&](const char* want) {
        if (!(in >> tok) || tok != want) {
            throw std::runtime_error(std::string("malformed record: expected '") + want + "' in " +
                                     name);
        }
    };
    while (in >> tok) {
        if (tok == "endsolid") {
            return builder.take(name);
        }
        if (tok != "facet") {
            throw std::runtime_error("malformed record: unexpected token '" + tok + "' in " + name);
        }
        expect("normal");
        double skip;
        for (int i = 0; i < 3; ++i) {
            if (!(in >> skip)) {
                throw std::runtime_error("malformed record: bad facet normal in " + name);
            }
        }
        expect("outer");
        expect("loop");
        std::array<std::uint32_t, 3> idx;
        for (int v = 0; v < 3; ++v) {
            expect("vertex");
            double x, y, z;
            if (!(in >> x >> y >> z)) {
                throw std::runtime_error("malformed record: bad vertex in " + name);
            }
            idx[v] = builder.add_vertex(x, y, z);
        }
        expect("endloop");
        expect("endfacet");
        builder.add_triangle(idx[0], idx[1], idx[2]);
    }
    throw std::runtime_error("malformed record: missing 'endsolid' in " + name);
}

}  // namespace

TriangleMesh load_mesh(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("unreadable file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();
    const std::string name = path.stem().string();
    if (data.empty()) {
        throw std::runtime_error("empty mesh: " + path.string());
    }

    // A binary file is recognised by its exact facet-count size; anything
    // else starting with "solid" is parsed as text.
    if (data.size() >= kBinaryHeader + 4) {
        std::uint32_t count;
        std::memcpy(&count, data.data() + kBinaryHeader, sizeof(count));
        if (data.size() == kBinaryHeader + 4 + static_cast<std::size_t>(count) * kBinaryRecord) {
            return load_binary(data, name);
        }
    }
    if (data.rfind("solid", 0) == 0) {
        return load_text(data, name);
    }
    if (data.size() >= kBinaryHeader + 4) {
        return load_binary(data, name);  // reports the size mismatch
    }
    throw std::runtime_error("malformed record: not an STL file: " + path.string());
}

void write_stl(const TriangleMesh& mesh, const std::filesystem::path& path, StlFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    if (format == StlFormat::binary) {
        char header[kBinaryHeader] = {};
        std::snprintf(header, sizeof(header), "%s", mesh.name.c_str());
        out.write(header, kBinaryHeader);
        const std::uint32_t count = static_cast<std::uint32_t>(mesh.triangles.size());
        out.write(reinterpret_cast<const char*>(&count), sizeof(count));
        for (const Triangle& t : mesh.triangles) {
            float rec[12] = {};
            const Vec3* vs[3] = {&mesh.vertices[t.a], &mesh.vertices[t.b], &mesh.vertices[t.c]};
            for (int v = 0; v < 3; ++v) {
                rec[3 + v * 3 + 0] = static_cast<float>(vs[v]->x);
                rec[3 + v * 3 + 1] = static_cast<float>(vs[v]->y);
                rec[3 + v * 3 + 2] = static_cast<float>(vs[v]->z);
            }
            out.write(reinterpret_cast<const char*>(rec), sizeof(rec));
            const char attr[2] = {};
            out.write(attr, 2);
        }
    } else {
        // Full double precision so fixture volumes survive the round trip.
        char line[256];
        out << "solid " << mesh.name << "\n";
        for (const Triangle& t : mesh.triangles) {
            out << "  facet normal 0 0 0\n    outer loop\n";
            const Vec3* vs[3] = {&mesh.vertices[t.a], &mesh.vertices[t.b], &mesh.vertices[t.c]};
            for (int v = 0; v < 3; ++v) {
                std::snprintf(line, sizeof(line), "      vertex %.17g %.17g %.17g\n", vs[v]->x,
                              vs[v]->y, vs[v]->z);
                out << line;
            }
            out << "    endloop\n  endfacet\n";
        }
        out << "endsolid " << mesh.name << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

}  // namespace amcost
