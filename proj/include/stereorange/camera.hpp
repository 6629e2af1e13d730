// camera.hpp - pinhole camera and two-camera rig geometry.
//
// Conventions used throughout the library:
//   * the rig frame has its origin midway between the camera centers,
//     x right, y up, z forward; the left camera sits at (-d/2, 0, 0),
//     the right camera at (+d/2, 0, 0)
//   * the focal length in pixels is f = h_resolution / tan(fov), with
//     fov the full horizontal field-of-view angle
//   * image coordinates are continuous, increase to the right, and the
//     image center is at h_resolution / 2
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stereorange {

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct CameraModel {
    int h_resolution = 0;            // horizontal pixel count
    int v_resolution = 0;            // vertical pixel count
    double fov_rad = 0.0;            // full horizontal field of view
};

struct StereoRig {
    CameraModel camera;              // identical for both sides
    double baseline_m = 0.0;         // distance between camera centers
    double right_yaw_rad = 0.0;      // yaw of the right optical axis, 0 = parallel
};

// Point in the rig frame. Only points with z_m > 0 are projectable.
struct WorldPoint {
    double x_m = 0.0;
    double y_m = 0.0;
    double z_m = 0.0;
};

// Continuous projections of one world point. v follows the left camera's
// convention; with zero yaw it is identical in both images (rectified rig).
struct ProjectionPair {
    double u_left = 0.0;
    double u_right = 0.0;
    double v = 0.0;

    double disparity() const { return u_left - u_right; }
};

inline void validate(const CameraModel& cam) {
    if (cam.h_resolution < 2 || cam.v_resolution < 2)
        throw std::invalid_argument("camera resolution must be at least 2x2 pixels");
    if (!(cam.fov_rad > 0.0) || !(cam.fov_rad < std::numbers::pi / 2.0))
        throw std::invalid_argument("camera fov must be in (0, pi/2) radians");
}

inline void validate(const StereoRig& rig) {
    validate(rig.camera);
    if (!(rig.baseline_m > 0.0))
        throw std::invalid_argument("baseline must be positive");
    if (!(std::abs(rig.right_yaw_rad) < rig.camera.fov_rad))
        throw std::invalid_argument("right camera yaw must satisfy |yaw| < fov");
}

// Focal length in pixels, f = H / tan(fov).
inline double focal_pixels(const CameraModel& cam) {
    validate(cam);
    return static_cast<double>(cam.h_resolution) / std::tan(cam.fov_rad);
}

// Projects a world point through both cameras. The right camera may be
// yawed about the vertical axis; positive yaw turns it toward the left
// camera's half-space (toe-in, disparity-increasing), negative yaw away
// (toe-out, disparity-reducing).
//
// Throws std::domain_error if the point lies behind either camera.
inline ProjectionPair project_pair(const StereoRig& rig, const WorldPoint& p) {
    validate(rig);
    if (!(p.z_m > 0.0))
        throw std::domain_error("point must lie in front of the rig (z > 0)");

    const double f = focal_pixels(rig.camera);
    const double half_w = rig.camera.h_resolution / 2.0;
    const double half_v = rig.camera.v_resolution / 2.0;
    const double half_base = rig.baseline_m / 2.0;

    ProjectionPair pp;
    pp.u_left = half_w + f * (p.x_m + half_base) / p.z_m;
    pp.v = half_v + f * p.y_m / p.z_m;

    const double c = std::cos(rig.right_yaw_rad);
    const double s = std::sin(rig.right_yaw_rad);
    const double x_rel = p.x_m - half_base;
    const double x_c = c * x_rel - s * p.z_m;
    const double z_c = s * x_rel + c * p.z_m;
    if (!(z_c > 0.0))
        throw std::domain_error("point lies behind the yawed right camera");
    pp.u_right = half_w + f * x_c / z_c;
    return pp;
}

// Pixel index of a continuous coordinate. Out-of-image values quantize
// too; callers decide whether to clip or flag them.
inline int quantize_coord(double u) {
    return static_cast<int>(std::floor(u));
}

}  // namespace stereorange
