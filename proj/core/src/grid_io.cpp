#include "vtg/grid_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "vtg/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "grid file I/O assumes a little-endian host");

namespace vtg {

namespace {

constexpr char kMagic[4] = {'V', 'T', 'G', 'R'};
constexpr uint32_t kVersionOccupancy = 1;
constexpr uint32_t kVersionScalar = 2;

void write_u32(std::ostream& out, uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f32(std::ostream& out, float v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

uint32_t read_u32(std::istream& in) {
    uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

float read_f32(std::istream& in) {
    float v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

void write_header(std::ostream& out, uint32_t version, const GridFrame& frame) {
    out.write(kMagic, 4);
    write_u32(out, version);
    write_u32(out, static_cast<uint32_t>(frame.dims.x()));
    write_u32(out, static_cast<uint32_t>(frame.dims.y()));
    write_u32(out, static_cast<uint32_t>(frame.dims.z()));
    write_f32(out, frame.voxel_size);
    write_f32(out, frame.origin.x());
    write_f32(out, frame.origin.y());
    write_f32(out, frame.origin.z());
}

GridFrame read_header(std::istream& in, uint32_t expect_version, const std::filesystem::path& path) {
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("not a grid file (bad magic): " + path.string());
    const uint32_t version = read_u32(in);
    if (version != expect_version)
        throw IoError("unexpected grid file version " + std::to_string(version) + " in " +
                      path.string());
    GridFrame frame;
    frame.dims.x() = static_cast<int>(read_u32(in));
    frame.dims.y() = static_cast<int>(read_u32(in));
    frame.dims.z() = static_cast<int>(read_u32(in));
    frame.voxel_size = read_f32(in);
    frame.origin.x() = read_f32(in);
    frame.origin.y() = read_f32(in);
    frame.origin.z() = read_f32(in);
    if (!in) throw IoError("truncated grid header: " + path.string());
    frame.require_valid();
    return frame;
}

}  // namespace

void write_grid(const std::filesystem::path& path, const VoxelGrid& grid) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_header(out, kVersionOccupancy, grid.frame());
    out.write(reinterpret_cast<const char*>(grid.bytes().data()),
              static_cast<std::streamsize>(grid.bytes().size()));
    if (!out) throw IoError("write failed: " + path.string());
}

VoxelGrid read_grid(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    const GridFrame frame = read_header(in, kVersionOccupancy, path);
    VoxelGrid grid(frame);
    in.read(reinterpret_cast<char*>(grid.bytes().data()),
            static_cast<std::streamsize>(grid.bytes().size()));
    if (!in) throw IoError("truncated occupancy payload: " + path.string());
    return grid;
}

void write_field(const std::filesystem::path& path, const ScalarGrid& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_header(out, kVersionScalar, field.frame());
    out.write(reinterpret_cast<const char*>(field.values().data()),
              static_cast<std::streamsize>(field.values().size() * sizeof(float)));
    if (!out) throw IoError("write failed: " + path.string());
}

ScalarGrid read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    const GridFrame frame = read_header(in, kVersionScalar, path);
    ScalarGrid field(frame);
    in.read(reinterpret_cast<char*>(field.values().data()),
            static_cast<std::streamsize>(field.values().size() * sizeof(float)));
    if (!in) throw IoError("truncated scalar payload: " + path.string());
    return field;
}

}  // namespace vtg
