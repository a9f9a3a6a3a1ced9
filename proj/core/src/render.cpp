#include "vtg/render.hpp"

#include <cmath>

#include "vtg/bvh.hpp"
#include "vtg/error.hpp"

namespace vtg {

PointCloud render_depth(const TriMesh& mesh, const CameraModel& cam) {
    cam.require_valid();
    PointCloud cloud;
    if (mesh.faces.empty()) return cloud;

    const Eigen::Vector3d cam_pos = cam.position();
    if (is_watertight(mesh) && std::abs(winding_number(mesh, cam_pos)) > 0.5)
        throw DegenerateViewError("render_depth: camera lies inside the mesh solid");

    const TriangleBvh bvh(mesh);
    const RigidTransform world_from_cam = cam.pose.inverse();
    cloud.points.reserve(static_cast<std::size_t>(cam.width) * cam.height / 4);
    for (int v = 0; v < cam.height; ++v) {
        for (int u = 0; u < cam.width; ++u) {
            // Camera-z of the direction is 1, so t equals metric depth.
            const Eigen::Vector3d dir = world_from_cam.rotate(cam.pixel_ray(u, v));
            const auto hit = bvh.intersect(cam_pos, dir, cam.z_near, cam.z_far);
            if (hit) cloud.points.push_back(cam_pos + hit->t * dir);
        }
    }
    return cloud;
}

}  // namespace vtg
