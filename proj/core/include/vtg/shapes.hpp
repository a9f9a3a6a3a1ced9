#pragma once

#include <cstdint>
#include <string>

#include "vtg/mesh.hpp"

namespace vtg {

// Primitive profiles used for the two halves of a composed object.
enum class Primitive { box, cylinder, sphere, wedge };

const char* to_string(Primitive p);
Primitive primitive_from_string(const std::string& name);

// A two-shape object: the half of `front` facing the camera (low z) glued to
// the half of `back` facing away (high z). Both halves are height fields over
// a shared rectangular footprint, so their mid-plane cross-sections always
// match and the composite is watertight by construction.
struct ShapePairSpec {
    Primitive front = Primitive::box;
    Primitive back = Primitive::box;
    double half_x = 0.05;       // footprint half-extent along x, meters
    double half_y = 0.05;       // footprint half-extent along y, meters
    double front_depth = 0.05;  // extent of the front half along -z, meters
    double back_depth = 0.05;   // extent of the back half along +z, meters
    int cells = 48;             // tessellation resolution per footprint axis
    uint64_t seed = 0;          // recorded provenance; generation is deterministic

    void require_valid() const;
};

// Height profile of a primitive over normalized footprint coordinates
// (u, v) in [-1, 1]^2; returns a value in [0, 1], exactly 0 only on
// boundary rows (wedge, cylinder) or footprint corners (sphere).
double primitive_profile(Primitive p, double u, double v);

// Builds the composed mesh, centered at x = y = 0 with the join plane at
// z = 0. The result is watertight and manifold with outward normals.
TriMesh gen_shape_pair(const ShapePairSpec& spec);

}  // namespace vtg
