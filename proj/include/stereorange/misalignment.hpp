// misalignment.hpp - range error caused by non-parallel optical axes.
// The measured range is computed by exact projection through the yawed
// rig, not a small-angle approximation.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stereorange/camera.hpp"
#include "stereorange/ranging.hpp"

namespace stereorange {

// Outcome of ranging an on-axis point through a possibly misaligned rig.
// measured_range_m and rel_error are empty exactly when the perturbed
// disparity is non-positive (the measurement diverges).
struct MisalignmentResult {
    double delta_rad = 0.0;
    double baseline_m = 0.0;
    double true_range_m = 0.0;
    std::optional<double> measured_range_m;
    std::optional<double> rel_error;
};

// Projects the on-axis point at r_true through the rig and converts the
// perturbed continuous disparity back to a range. Zero yaw is the exact
// identity of the model and short-circuits to rel_error = 0, bypassing
// projection round-off.
inline MisalignmentResult misalignment_range_error(const StereoRig& rig,
                                                   double r_true_m) {
    validate(rig);
    if (!(r_true_m > 0.0))
        throw std::domain_error("range must be positive");

    MisalignmentResult res;
    res.delta_rad = rig.right_yaw_rad;
    res.baseline_m = rig.baseline_m;
    res.true_range_m = r_true_m;

    if (rig.right_yaw_rad == 0.0) {
        res.measured_range_m = r_true_m;
        res.rel_error = 0.0;
        return res;
    }

    double perturbed;
    try {
        perturbed = project_pair(rig, {0.0, 0.0, r_true_m}).disparity();
    } catch (const std::domain_error&) {
        return res;  // behind the yawed camera: divergent
    }
    if (perturbed <= 0.0)
        return res;  // divergent

    const double measured = rig.baseline_m * rig.camera.h_resolution /
                            (std::tan(rig.camera.fov_rad) * perturbed);
    res.measured_range_m = measured;
    res.rel_error = (measured - r_true_m) / r_true_m;
    return res;
}

// Relative range error over a grid of misalignment magnitudes, one curve
// per baseline. The swept magnitude is applied as toe-out yaw (the
// disparity-reducing, worst-case direction). abscissa = magnitude in
// degrees, group_key = baseline, empty value = divergent.
inline std::vector<ErrorSample> fig2_curve(const std::vector<double>& baselines_m,
                                           double r_true_m, int h_resolution,
                                           double fov_rad, double delta_lo_deg,
                                           double delta_hi_deg,
                                           double delta_step_deg,
                                           int v_resolution = 2) {
    if (baselines_m.empty())
        throw std::domain_error("at least one baseline is required");
    if (!(delta_lo_deg >= 0.0) || !(delta_hi_deg >= delta_lo_deg) ||
        !(delta_step_deg > 0.0))
        throw std::domain_error(
            "misalignment sweep requires 0 <= lo <= hi and step > 0");
    const int steps = static_cast<int>(
        std::floor((delta_hi_deg - delta_lo_deg) / delta_step_deg + 1e-9));
    std::vector<ErrorSample> samples;
    samples.reserve(baselines_m.size() * static_cast<std::size_t>(steps + 1));
    for (double baseline : baselines_m) {
        for (int i = 0; i <= steps; ++i) {
            const double mag_deg = delta_lo_deg + i * delta_step_deg;
            StereoRig rig;
            rig.camera = {h_resolution, v_resolution, fov_rad};
            rig.baseline_m = baseline;
            rig.right_yaw_rad = -deg_to_rad(mag_deg);
            const MisalignmentResult res = misalignment_range_error(rig, r_true_m);
            samples.push_back({mag_deg, baseline, res.rel_error});
        }
    }
    return samples;
}

}  // namespace stereorange
