#pragma once

#include <filesystem>

#include "vtg/mesh.hpp"

namespace vtg {

// Wavefront OBJ, triangles only (larger polygons are rejected).
TriMesh read_obj(const std::filesystem::path& path);
void write_obj(const std::filesystem::path& path, const TriMesh& mesh);

// STL, binary or ASCII (detected from the file contents). Vertices are
// deduplicated by exact coordinate match so downstream topology checks see
// shared edges.
TriMesh read_stl(const std::filesystem::path& path);

// Dispatch on extension: .obj, .stl.
TriMesh read_mesh(const std::filesystem::path& path);

}  // namespace vtg
