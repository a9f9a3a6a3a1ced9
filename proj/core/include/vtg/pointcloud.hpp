#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

namespace vtg {

// 3D points in meters, with optional unit normals. `normal_valid` marks
// points whose normal estimate is usable; both auxiliary arrays are either
// empty or sized like `points`.
struct PointCloud {
    std::vector<Eigen::Vector3d> points;
    std::vector<Eigen::Vector3d> normals;
    std::vector<uint8_t> normal_valid;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    bool has_normals() const { return normals.size() == points.size() && !points.empty(); }

    void append(const PointCloud& other);

    static PointCloud concat(const PointCloud& a, const PointCloud& b) {
        PointCloud out = a;
        out.append(b);
        return out;
    }
};

// Plain-text cloud files: one point per line, "x y z" or "x y z nx ny nz".
void write_xyz(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_xyz(const std::filesystem::path& path);

}  // namespace vtg
