#include "vtg/smooth.hpp"

#include <cstdint>
#include <unordered_set>

#include "vtg/error.hpp"

namespace vtg {

TriMesh laplacian_smooth(const TriMesh& mesh, int iterations, double lambda) {
    if (iterations < 0) throw InvalidInputError("laplacian_smooth: iterations must be >= 0");
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw InvalidInputError("laplacian_smooth: lambda must lie in (0,1]");

    TriMesh out = mesh;
    if (iterations == 0 || mesh.vertices.empty()) return out;

    // 1-ring adjacency from undirected edges, deduplicated.
    const std::size_t n = mesh.vertices.size();
    std::vector<std::vector<int>> ring(n);
    {
        std::unordered_set<uint64_t> seen;
        seen.reserve(mesh.faces.size() * 3);
        const auto link = [&](int a, int b) {
            const uint64_t key = a < b
                                     ? (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b)
                                     : (static_cast<uint64_t>(b) << 32) | static_cast<uint32_t>(a);
            if (!seen.insert(key).second) return;
            ring[a].push_back(b);
            ring[b].push_back(a);
        };
        for (const auto& f : mesh.faces) {
            link(f[0], f[1]);
            link(f[1], f[2]);
            link(f[2], f[0]);
        }
    }

    std::vector<Eigen::Vector3d> next(n);
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            if (ring[i].empty()) {
                next[i] = out.vertices[i];
                continue;
            }
            Eigen::Vector3d mean = Eigen::Vector3d::Zero();
            for (int j : ring[i]) mean += out.vertices[j];
            mean /= static_cast<double>(ring[i].size());
            next[i] = out.vertices[i] + lambda * (mean - out.vertices[i]);
        }
        out.vertices.swap(next);
    }
    return out;
}

}  // namespace vtg
