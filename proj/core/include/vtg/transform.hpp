#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace vtg {

// Rigid transform p' = R p + t.
struct RigidTransform {
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    Eigen::Vector3d t = Eigen::Vector3d::Zero();

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return R * p + t; }
    Eigen::Vector3d rotate(const Eigen::Vector3d& v) const { return R * v; }

    RigidTransform inverse() const {
        RigidTransform out;
        out.R = R.transpose();
        out.t = -(out.R * t);
        return out;
    }

    // this ∘ other: apply `other` first, then this.
    RigidTransform compose(const RigidTransform& other) const {
        RigidTransform out;
        out.R = R * other.R;
        out.t = R * other.t + t;
        return out;
    }

    static RigidTransform identity() { return {}; }

    static RigidTransform translation(const Eigen::Vector3d& t) {
        RigidTransform out;
        out.t = t;
        return out;
    }

    static RigidTransform rotation_y(double angle_rad) {
        RigidTransform out;
        out.R = Eigen::AngleAxisd(angle_rad, Eigen::Vector3d::UnitY()).toRotationMatrix();
        return out;
    }
};

}  // namespace vtg
