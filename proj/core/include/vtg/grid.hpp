#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "vtg/error.hpp"

namespace vtg {

// Geometry of a voxel lattice: dims voxels per axis, cubic cells with edge
// length voxel_size, origin at the min corner of voxel (0,0,0). voxel_size
// and origin are stored in single precision so a frame written to disk and
// read back compares exactly equal.
struct GridFrame {
    Eigen::Vector3i dims{0, 0, 0};
    float voxel_size = 0.0f;
    Eigen::Vector3f origin{0.0f, 0.0f, 0.0f};

    static GridFrame make(const Eigen::Vector3i& dims, double voxel_size,
                          const Eigen::Vector3d& origin);

    // Cube frame: n^3 voxels covering an axis-aligned cube of the given edge
    // length centered at `center`.
    static GridFrame cube(int n, double edge, const Eigen::Vector3d& center);

    bool valid() const {
        return dims.x() > 0 && dims.y() > 0 && dims.z() > 0 && voxel_size > 0.0f &&
               origin.allFinite();
    }
    void require_valid() const;

    std::size_t voxel_count() const {
        return static_cast<std::size_t>(dims.x()) * static_cast<std::size_t>(dims.y()) *
               static_cast<std::size_t>(dims.z());
    }

    // x-fastest linearization.
    std::size_t linear_index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims.x()) *
                   (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims.y()) * z);
    }

    bool contains(int x, int y, int z) const {
        return x >= 0 && y >= 0 && z >= 0 && x < dims.x() && y < dims.y() && z < dims.z();
    }

    Eigen::Vector3d voxel_center(int x, int y, int z) const {
        const double h = voxel_size;
        return origin.cast<double>() +
               h * Eigen::Vector3d(x + 0.5, y + 0.5, z + 0.5);
    }

    Eigen::Vector3d min_corner() const { return origin.cast<double>(); }
    Eigen::Vector3d max_corner() const {
        return origin.cast<double>() + static_cast<double>(voxel_size) * dims.cast<double>();
    }

    // Voxel index containing p (componentwise floor); may be out of range.
    Eigen::Vector3i point_to_voxel(const Eigen::Vector3d& p) const;

    bool operator==(const GridFrame& o) const {
        return dims == o.dims && voxel_size == o.voxel_size && origin == o.origin;
    }
    bool operator!=(const GridFrame& o) const { return !(*this == o); }
};

void require_same_frame(const GridFrame& a, const GridFrame& b, const char* what);

// Binary occupancy over a GridFrame. Bits are packed x-fastest, LSB-first
// within each byte; trailing bits of the last byte are kept zero so byte-wise
// comparisons and popcounts are exact.
class VoxelGrid {
public:
    VoxelGrid() = default;
    explicit VoxelGrid(const GridFrame& frame);

    const GridFrame& frame() const { return frame_; }

    bool test(std::size_t i) const { return (bits_[i >> 3] >> (i & 7)) & 1u; }
    bool test(int x, int y, int z) const { return test(frame_.linear_index(x, y, z)); }

    void set(std::size_t i, bool value = true) {
        const std::size_t byte = i >> 3;
        const uint8_t mask = static_cast<uint8_t>(1u << (i & 7));
        if (value)
            bits_[byte] |= mask;
        else
            bits_[byte] &= static_cast<uint8_t>(~mask);
    }
    void set(int x, int y, int z, bool value = true) {
        set(frame_.linear_index(x, y, z), value);
    }

    std::size_t count() const;

    const std::vector<uint8_t>& bytes() const { return bits_; }
    std::vector<uint8_t>& bytes() { return bits_; }

    bool operator==(const VoxelGrid& o) const {
        return frame_ == o.frame_ && bits_ == o.bits_;
    }
    bool operator!=(const VoxelGrid& o) const { return !(*this == o); }

private:
    GridFrame frame_;
    std::vector<uint8_t> bits_;
};

// Real-valued field on a GridFrame, one f32 per voxel, same linearization.
class ScalarGrid {
public:
    ScalarGrid() = default;
    explicit ScalarGrid(const GridFrame& frame, float fill = 0.0f);

    const GridFrame& frame() const { return frame_; }

    float at(std::size_t i) const { return values_[i]; }
    float at(int x, int y, int z) const { return values_[frame_.linear_index(x, y, z)]; }
    void set(std::size_t i, float v) { values_[i] = v; }
    void set(int x, int y, int z, float v) { values_[frame_.linear_index(x, y, z)] = v; }

    const std::vector<float>& values() const { return values_; }
    std::vector<float>& values() { return values_; }

    void require_finite() const;

private:
    GridFrame frame_;
    std::vector<float> values_;
};

}  // namespace vtg
