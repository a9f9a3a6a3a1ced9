#include "vtg/pointcloud.hpp"

#include <fstream>
#include <sstream>

#include "vtg/error.hpp"

namespace vtg {

void PointCloud::append(const PointCloud& other) {
    // Keep the "all or nothing" shape of the auxiliary arrays: if either side
    // lacks normals the concatenation drops them.
    const bool keep_normals = (points.empty() || has_normals()) &&
                              (other.points.empty() || other.has_normals());
    if (keep_normals) {
        normals.insert(normals.end(), other.normals.begin(), other.normals.end());
        if (!normal_valid.empty() || !other.normal_valid.empty()) {
            if (normal_valid.empty()) normal_valid.assign(points.size(), 1);
            if (other.normal_valid.empty())
                normal_valid.insert(normal_valid.end(), other.points.size(), 1);
            else
                normal_valid.insert(normal_valid.end(), other.normal_valid.begin(),
                                    other.normal_valid.end());
        }
    } else {
        normals.clear();
        normal_valid.clear();
    }
    points.insert(points.end(), other.points.begin(), other.points.end());
}

void write_xyz(const std::filesystem::path& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.precision(17);
    const bool with_normals = cloud.has_normals();
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& p = cloud.points[i];
        out << p.x() << ' ' << p.y() << ' ' << p.z();
        if (with_normals) {
            const auto& n = cloud.normals[i];
            out << ' ' << n.x() << ' ' << n.y() << ' ' << n.z();
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

PointCloud read_xyz(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    PointCloud cloud;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        Eigen::Vector3d p, n;
        if (!(ss >> p.x() >> p.y() >> p.z()))
            throw IoError("bad point on line " + std::to_string(lineno) + " of " + path.string());
        cloud.points.push_back(p);
        if (ss >> n.x() >> n.y() >> n.z()) {
            cloud.normals.push_back(n);
            cloud.normal_valid.push_back(1);
        }
    }
    if (!cloud.normals.empty() && cloud.normals.size() != cloud.points.size())
        throw IoError("mixed with/without-normal lines in " + path.string());
    return cloud;
}

}  // namespace vtg
