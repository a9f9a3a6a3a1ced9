#pragma once

#include "vtg/error.hpp"
#include "vtg/transform.hpp"

namespace vtg {

// Pinhole camera. `pose` maps world to camera coordinates; the camera looks
// along its +z axis. Rays go through pixel centers: pixel (u,v) maps to
// camera-space direction ((u+0.5-cx)/fx, (v+0.5-cy)/fy, 1).
struct CameraModel {
    RigidTransform pose;  // camera-from-world
    int width = 160;
    int height = 120;
    double fx = 120.0;
    double fy = 120.0;
    double cx = 80.0;
    double cy = 60.0;
    double z_near = 0.2;
    double z_far = 2.0;

    // Desk-scale default: 160x120, f = 120 px, principal point centered,
    // z in [0.2, 2.0] m, identity pose (camera at the world origin).
    static CameraModel desk_default() { return CameraModel{}; }

    Eigen::Vector3d position() const { return pose.inverse().t; }

    // Camera-space ray direction for pixel (u,v); z component is 1, so the
    // ray parameter of a hit equals its metric depth.
    Eigen::Vector3d pixel_ray(int u, int v) const {
        return {(u + 0.5 - cx) / fx, (v + 0.5 - cy) / fy, 1.0};
    }

    void require_valid() const {
        if (width <= 0 || height <= 0 || !(fx > 0.0) || !(fy > 0.0))
            throw InvalidInputError("camera: image size and focal lengths must be positive");
        if (!(z_near > 0.0) || !(z_far > z_near))
            throw InvalidInputError("camera: need 0 < z_near < z_far");
    }
};

}  // namespace vtg
