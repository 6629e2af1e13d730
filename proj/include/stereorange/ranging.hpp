// ranging.hpp - closed-form distance and error formulas for a rectified
// stereo rig: disparity-to-range conversion, the minimum reliable
// disparity for a given sensitivity, baseline design, the quantization
// error of integer disparities, and a size-dependent error model.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stereorange/camera.hpp"

namespace stereorange {

// Integer pixel difference dx = u_left - u_right. Range computations
// require px >= 1; px <= 0 is rejected as a domain error.
struct Disparity {
    int px = 0;
};

struct RangeEstimate {
    double range_m = 0.0;
    double eps_quantization = 0.0;   // relative error at this disparity
};

// One point of a swept curve. group_key carries the family index
// (baseline or target width) when curves come in families. An empty
// value marks a divergent / unmeasurable sample.
struct ErrorSample {
    double abscissa = 0.0;
    double group_key = 0.0;
    std::optional<double> value;
};

namespace detail {
inline void check_range_inputs(double baseline_m, int h_resolution, double fov_rad) {
    if (!(baseline_m > 0.0))
        throw std::domain_error("baseline must be positive");
    if (h_resolution < 2)
        throw std::domain_error("horizontal resolution must be at least 2");
    if (!(fov_rad > 0.0) || !(fov_rad < std::numbers::pi / 2.0))
        throw std::domain_error("fov must be in (0, pi/2) radians");
}
}  // namespace detail

// Relative range gap between adjacent integer disparities. With
// r(n) = C/n the gap (r(n) - r(n+1)) / r(n) reduces to 1/(n+1),
// independent of the rig.
inline double quantization_error(Disparity dx) {
    if (dx.px < 1)
        throw std::domain_error("disparity must be >= 1");
    return 1.0 / (dx.px + 1.0);
}

// Range from an integer disparity: r = d*H / (tan(fov) * dx).
inline RangeEstimate range_from_disparity(double baseline_m, int h_resolution,
                                          double fov_rad, Disparity dx) {
    detail::check_range_inputs(baseline_m, h_resolution, fov_rad);
    if (dx.px < 1)
        throw std::domain_error("disparity must be >= 1");
    RangeEstimate est;
    est.range_m = baseline_m * h_resolution / (std::tan(fov_rad) * dx.px);
    est.eps_quantization = quantization_error(dx);
    return est;
}

// Range from disparity in focal-length form: r = f*d / dx. Equivalent to
// range_from_disparity when f = H / tan(fov).
inline double range_eq1(double focal_px, double baseline_m, Disparity dx) {
    if (!(focal_px > 0.0))
        throw std::domain_error("focal length must be positive");
    if (!(baseline_m > 0.0))
        throw std::domain_error("baseline must be positive");
    if (dx.px < 1)
        throw std::domain_error("disparity must be >= 1");
    return focal_px * baseline_m / dx.px;
}

// Continuous (unquantized) disparity at which a point at range r appears.
inline double disparity_for_range(double baseline_m, int h_resolution,
                                  double fov_rad, double range_m) {
    detail::check_range_inputs(baseline_m, h_resolution, fov_rad);
    if (!(range_m > 0.0))
        throw std::domain_error("range must be positive");
    return baseline_m * h_resolution / (std::tan(fov_rad) * range_m);
}

// Smallest integer disparity whose quantization error does not exceed the
// given sensitivity; closed form ceil(1/s - 1), adjusted to be robust
// against floating-point rounding of 1/s.
inline int min_reliable_disparity(double sensitivity) {
    if (!(sensitivity > 0.0) || !(sensitivity < 1.0))
        throw std::domain_error("sensitivity must be in (0, 1)");
    int n = static_cast<int>(std::ceil(1.0 / sensitivity - 1.0));
    if (n < 1) n = 1;
    while (1.0 / (n + 1.0) > sensitivity) ++n;
    while (n > 1 && 1.0 / static_cast<double>(n) <= sensitivity) --n;
    return n;
}

// Baseline required to reach r_max with dx_min pixels of disparity:
// d = r * tan(fov) * dx / H.
inline double design_baseline(double r_max_m, double fov_rad, int h_resolution,
                              int dx_min) {
    if (!(r_max_m > 0.0))
        throw std::domain_error("range must be positive");
    if (h_resolution < 2)
        throw std::domain_error("horizontal resolution must be at least 2");
    if (!(fov_rad > 0.0) || !(fov_rad < std::numbers::pi / 2.0))
        throw std::domain_error("fov must be in (0, pi/2) radians");
    if (dx_min < 0)
        throw std::domain_error("disparity must be non-negative");
    return r_max_m * std::tan(fov_rad) * dx_min / h_resolution;
}

// Worst-case relative range error for a target of a given physical width.
//
// The target appears s = f*w/r pixels wide. Boundary localization is
// modelled as a disparity perturbation of p(s) = max(1, ceil(kappa/s))
// pixels: narrow targets give the matcher fewer columns to pin the edges,
// so p grows as the apparent width shrinks. The returned value is the
// relative range overestimate p / (D - p) caused by underestimating the
// continuous disparity D by p pixels. Returns nullopt when D - p <= 0,
// i.e. the target is unmeasurable at this range.
inline std::optional<double> size_dependent_error(const CameraModel& camera,
                                                  double baseline_m,
                                                  double target_width_m,
                                                  double range_m,
                                                  double kappa_px2 = 32.0) {
    if (!(target_width_m > 0.0))
        throw std::domain_error("target width must be positive");
    if (!(range_m > 0.0))
        throw std::domain_error("range must be positive");
    if (!(kappa_px2 > 0.0))
        throw std::domain_error("kappa must be positive");
    const double f = focal_pixels(camera);
    const double apparent_px = f * target_width_m / range_m;
    const double perturb_px = std::max(1.0, std::ceil(kappa_px2 / apparent_px));
    const double d_cont = disparity_for_range(baseline_m, camera.h_resolution,
                                              camera.fov_rad, range_m);
    if (d_cont - perturb_px <= 0.0)
        return std::nullopt;
    return perturb_px / (d_cont - perturb_px);
}

// Range-vs-disparity curve: one sample per integer disparity in
// [dx_lo, dx_hi], abscissa = disparity, value = range.
inline std::vector<ErrorSample> fig1_curve(double baseline_m, int h_resolution,
                                           double fov_rad, int dx_lo, int dx_hi) {
    if (dx_lo < 1 || dx_hi < dx_lo)
        throw std::domain_error("disparity sweep requires 1 <= dx_lo <= dx_hi");
    std::vector<ErrorSample> samples;
    samples.reserve(static_cast<std::size_t>(dx_hi - dx_lo + 1));
    for (int n = dx_lo; n <= dx_hi; ++n) {
        const RangeEstimate est =
            range_from_disparity(baseline_m, h_resolution, fov_rad, Disparity{n});
        samples.push_back({static_cast<double>(n), baseline_m, est.range_m});
    }
    return samples;
}

// Size-dependent error over a range grid, one curve per target width.
// abscissa = range, group_key = width, empty value = unmeasurable.
inline std::vector<ErrorSample> fig3_curve(const CameraModel& camera,
                                           double baseline_m,
                                           const std::vector<double>& widths_m,
                                           double r_lo_m, double r_hi_m,
                                           double r_step_m,
                                           double kappa_px2 = 32.0) {
    if (widths_m.empty())
        throw std::domain_error("at least one target width is required");
    if (!(r_lo_m > 0.0) || !(r_hi_m >= r_lo_m) || !(r_step_m > 0.0))
        throw std::domain_error("range sweep requires 0 < r_lo <= r_hi and step > 0");
    const int steps =
        static_cast<int>(std::floor((r_hi_m - r_lo_m) / r_step_m + 1e-9));
    std::vector<ErrorSample> samples;
    samples.reserve(widths_m.size() * static_cast<std::size_t>(steps + 1));
    for (double width : widths_m) {
        for (int i = 0; i <= steps; ++i) {
            const double r = r_lo_m + i * r_step_m;
            samples.push_back(
                {r, width,
                 size_dependent_error(camera, baseline_m, width, r, kappa_px2)});
        }
    }
    return samples;
}

}  // namespace stereorange
