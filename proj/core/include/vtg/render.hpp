#pragma once

#include "vtg/camera.hpp"
#include "vtg/mesh.hpp"
#include "vtg/pointcloud.hpp"

namespace vtg {

// Ray-cast depth render: one ray per pixel, nearest triangle hit with depth
// in [z_near, z_far] back-projected to a world-space point. Pixels without a
// hit contribute nothing; the result is the 2.5D cloud of visible surface.
// A camera placed inside a watertight mesh raises DegenerateViewError.
PointCloud render_depth(const TriMesh& mesh, const CameraModel& cam);

}  // namespace vtg
