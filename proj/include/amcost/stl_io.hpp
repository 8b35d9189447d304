// STL ingest (binary and text encodings) and a writer used for fixtures and
// tests. Coordinates are taken as millimetres.
#pragma once

#include <filesystem>

#include "amcost/geometry.hpp"

namespace amcost {

enum class StlFormat { binary, text };

// Loads either STL encoding, deduplicates vertices, drops degenerate
// triangles and validates the result. Throws std::runtime_error on
// unreadable files, malformed records or empty meshes.
TriangleMesh load_mesh(const std::filesystem::path& path);

void write_stl(const TriangleMesh& mesh, const std::filesystem::path& path, StlFormat format);

}  // namespace amcost
