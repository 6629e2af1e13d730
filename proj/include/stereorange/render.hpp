// render.hpp - deterministic synthetic stereo-pair renderer. Scenes are
// textured rectangles facing the rig; the texture is anchored in world
// coordinates so both views sample the same surface pattern, shifted by
// the true disparity. Ground-truth bounding boxes stand in for an object
// detector.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stereorange/camera.hpp"
#include "stereorange/image.hpp"

namespace stereorange {

// Upright rectangle at depth range_m, centered at (lateral_m, 0).
struct TargetSpec {
    double range_m = 0.0;
    double lateral_m = 0.0;
    double width_m = 0.0;
    double height_m = 0.0;
    std::uint64_t texture_seed = 0;
};

struct Scene {
    CameraModel camera;
    StereoRig rig;                   // rig.camera mirrors camera
    int background_intensity = 64;
    std::vector<TargetSpec> targets;
};

// Integer pixel bounds, inclusive-exclusive [min, max).
struct BoundingBox {
    int u_min = 0;
    int u_max = 0;
    int v_min = 0;
    int v_max = 0;

    int width() const { return u_max - u_min; }
    int height() const { return v_max - v_min; }
    bool empty() const { return u_min >= u_max || v_min >= v_max; }
};

// Deterministic texture hash on a 64x64 texel grid (xorshift64*).
// Indices wrap modulo 64; seed 0 is remapped so every seed yields a
// non-degenerate pattern.
inline std::uint8_t texture_value(std::uint64_t seed, std::uint64_t i,
                                  std::uint64_t j) {
    i %= 64;
    j %= 64;
    if (seed == 0)
        seed = 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = seed ^ (i * 64 + j + 1);
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    x *= 0x2545F4914F6CDD1DULL;
    return static_cast<std::uint8_t>(x >> 56);
}

struct RenderResult {
    Image left;
    Image right;
    // Indexed like Scene::targets; empty when the target is not visible
    // on that side.
    std::vector<std::optional<BoundingBox>> left_boxes;
    std::vector<std::optional<BoundingBox>> right_boxes;
};

namespace detail {

// One camera of the rig: position on the baseline plus yaw about the
// vertical axis.
struct ViewGeometry {
    double f = 0.0;
    double half_w = 0.0;
    double half_v = 0.0;
    double cam_x = 0.0;
    double cos_yaw = 1.0;
    double sin_yaw = 0.0;
    int width = 0;
    int height = 0;

    void to_camera(double x, double z, double& x_c, double& z_c) const {
        const double x_rel = x - cam_x;
        x_c = cos_yaw * x_rel - sin_yaw * z;
        z_c = sin_yaw * x_rel + cos_yaw * z;
    }

    // World hit point of the pixel-center ray at forward depth z_t.
    // False when the ray cannot reach that depth.
    bool hit_at_depth(int u, int v, double z_t, double& x_w, double& y_w) const {
        const double a = (u + 0.5 - half_w) / f;
        const double b = (v + 0.5 - half_v) / f;
        const double denom = cos_yaw - a * sin_yaw;
        if (!(denom > 0.0))
            return false;
        x_w = cam_x + z_t * (a * cos_yaw + sin_yaw) / denom;
        y_w = z_t * b / denom;
        return true;
    }
};

inline ViewGeometry make_view(const Scene& scene, bool right_side) {
    ViewGeometry view;
    view.f = focal_pixels(scene.camera);
    view.half_w = scene.camera.h_resolution / 2.0;
    view.half_v = scene.camera.v_resolution / 2.0;
    view.width = scene.camera.h_resolution;
    view.height = scene.camera.v_resolution;
    view.cam_x = (right_side ? 0.5 : -0.5) * scene.rig.baseline_m;
    const double yaw = right_side ? scene.rig.right_yaw_rad : 0.0;
    view.cos_yaw = std::cos(yaw);
    view.sin_yaw = std::sin(yaw);
    return view;
}

// Smallest pixel index whose center lies at or above the continuous
// coordinate lo; pixel u covers centers in [u, u+1).
inline int first_covered(double lo) {
    return static_cast<int>(std::ceil(lo - 0.5));
}

// Projected pixel extents of a target in one view, clipped to the image.
inline std::optional<BoundingBox> project_box(const ViewGeometry& view,
                                              const TargetSpec& target) {
    const double x_lo = target.lateral_m - target.width_m / 2.0;
    const double x_hi = target.lateral_m + target.width_m / 2.0;
    const double y_hi = target.height_m / 2.0;

    double xc_lo, zc_lo, xc_hi, zc_hi;
    view.to_camera(x_lo, target.range_m, xc_lo, zc_lo);
    view.to_camera(x_hi, target.range_m, xc_hi, zc_hi);
    if (!(zc_lo > 0.0) || !(zc_hi > 0.0))
        return std::nullopt;

    const double u_lo = view.half_w + view.f * xc_lo / zc_lo;
    const double u_hi = view.half_w + view.f * xc_hi / zc_hi;
    const double v_a = view.f * y_hi / zc_lo;
    const double v_b = view.f * y_hi / zc_hi;
    const double v_lo = view.half_v - std::max(v_a, v_b);
    const double v_hi = view.half_v + std::max(v_a, v_b);

    BoundingBox box;
    box.u_min = std::max(first_covered(u_lo), 0);
    box.u_max = std::min(first_covered(u_hi), view.width);
    box.v_min = std::max(first_covered(v_lo), 0);
    box.v_max = std::min(first_covered(v_hi), view.height);
    if (box.empty())
        return std::nullopt;
    return box;
}

inline void paint_target(const ViewGeometry& view, const TargetSpec& target,
                         const BoundingBox& box, Image& img) {
    const double x_lo = target.lateral_m - target.width_m / 2.0;
    const double y_lo = -target.height_m / 2.0;
    for (int v = box.v_min; v < box.v_max; ++v) {
        for (int u = box.u_min; u < box.u_max; ++u) {
            double x_w, y_w;
            if (!view.hit_at_depth(u, v, target.range_m, x_w, y_w))
                continue;
            const double tx = (x_w - x_lo) / target.width_m;
            const double ty = (y_w - y_lo) / target.height_m;
            if (tx < 0.0 || tx >= 1.0 || ty < 0.0 || ty >= 1.0)
                continue;
            img.at(u, v) = texture_value(
                target.texture_seed,
                static_cast<std::uint64_t>(std::floor(ty * 64.0)),
                static_cast<std::uint64_t>(std::floor(tx * 64.0)));
        }
    }
}

}  // namespace detail

inline void validate(const Scene& scene) {
    validate(scene.camera);
    validate(scene.rig);
    if (scene.background_intensity < 0 || scene.background_intensity > 255)
        throw std::invalid_argument("background intensity must be in [0, 255]");
    for (const TargetSpec& t : scene.targets) {
        if (!(t.range_m > 0.0))
            throw std::invalid_argument("target range must be positive");
        if (!(t.width_m > 0.0) || !(t.height_m > 0.0))
            throw std::invalid_argument("target size must be positive");
    }
}

// Renders both views of the scene. Targets are painted far to near, so
// the nearest target covering a pixel wins. Targets outside a view's
// frustum get an empty box on that side; that is not an error.
inline RenderResult render_pair(const Scene& scene) {
    validate(scene);

    RenderResult result;
    const auto bg = static_cast<std::uint8_t>(scene.background_intensity);
    result.left = Image(scene.camera.h_resolution, scene.camera.v_resolution, bg);
    result.right = Image(scene.camera.h_resolution, scene.camera.v_resolution, bg);
    result.left_boxes.resize(scene.targets.size());
    result.right_boxes.resize(scene.targets.size());

    std::vector<std::size_t> order(scene.targets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scene.targets[a].range_m > scene.targets[b].range_m;
    });

    for (int side = 0; side < 2; ++side) {
        const bool right_side = side == 1;
        const detail::ViewGeometry view = detail::make_view(scene, right_side);
        Image& img = right_side ? result.right : result.left;
        auto& boxes = right_side ? result.right_boxes : result.left_boxes;
        for (std::size_t idx : order) {
            const TargetSpec& target = scene.targets[idx];
            const std::optional<BoundingBox> box = detail::project_box(view, target);
            boxes[idx] = box;
            if (box)
                detail::paint_target(view, target, *box, img);
        }
    }
    return result;
}

}  // namespace stereorange
