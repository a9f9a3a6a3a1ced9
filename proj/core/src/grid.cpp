#include "vtg/grid.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace vtg {

GridFrame GridFrame::make(const Eigen::Vector3i& dims, double voxel_size,
                          const Eigen::Vector3d& origin) {
    GridFrame f;
    f.dims = dims;
    f.voxel_size = static_cast<float>(voxel_size);
    f.origin = origin.cast<float>();
    f.require_valid();
    return f;
}

GridFrame GridFrame::cube(int n, double edge, const Eigen::Vector3d& center) {
    if (n <= 0 || !(edge > 0.0)) throw InvalidInputError("cube frame needs n > 0 and edge > 0");
    const double h = edge / n;
    return make(Eigen::Vector3i(n, n, n), h, center - Eigen::Vector3d::Constant(edge / 2.0));
}

void GridFrame::require_valid() const {
    if (!valid()) {
        throw InvalidInputError("invalid grid frame: dims=(" + std::to_string(dims.x()) + "," +
                                std::to_string(dims.y()) + "," + std::to_string(dims.z()) +
                                ") voxel_size=" + std::to_string(voxel_size));
    }
}

Eigen::Vector3i GridFrame::point_to_voxel(const Eigen::Vector3d& p) const {
    const double h = voxel_size;
    const Eigen::Vector3d q = (p - origin.cast<double>()) / h;
    return Eigen::Vector3i(static_cast<int>(std::floor(q.x())),
                           static_cast<int>(std::floor(q.y())),
                           static_cast<int>(std::floor(q.z())));
}

void require_same_frame(const GridFrame& a, const GridFrame& b, const char* what) {
    if (a != b) throw FrameMismatchError(std::string(what) + ": grid frames differ");
}

VoxelGrid::VoxelGrid(const GridFrame& frame) : frame_(frame) {
    frame_.require_valid();
    bits_.assign((frame_.voxel_count() + 7) / 8, 0);
}

std::size_t VoxelGrid::count() const {
    std::size_t n = 0;
    for (uint8_t b : bits_) n += std::popcount(b);
    return n;
}

ScalarGrid::ScalarGrid(const GridFrame& frame, float fill) : frame_(frame) {
    frame_.require_valid();
    values_.assign(frame_.voxel_count(), fill);
}

void ScalarGrid::require_finite() const {
    for (float v : values_) {
        if (!std::isfinite(v)) throw InvalidInputError("scalar grid contains non-finite values");
    }
}

}  // namespace vtg
