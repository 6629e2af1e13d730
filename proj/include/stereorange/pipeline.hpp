// pipeline.hpp - frame-sequence processing: render, match, and range
// every target per frame, then derive closing-rate warnings from the
// resulting range track.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stereorange/block_match.hpp"
#include "stereorange/ranging.hpp"
#include "stereorange/render.hpp"

namespace stereorange {

// One simulated instant: every target's range shrinks by ego_advance_m.
struct FrameSpec {
    double t_s = 0.0;
    double ego_advance_m = 0.0;
};

struct FrameEstimate {
    double t_s = 0.0;
    int target_index = 0;
    int disparity_px = 0;
    double range_m = 0.0;
    double true_range_m = 0.0;
};

// Target skipped in one frame: out of view, no matcher overlap, or a
// non-positive matched disparity.
struct SkippedTarget {
    double t_s = 0.0;
    int target_index = 0;
    std::string reason;
};

struct SequenceResult {
    std::vector<FrameEstimate> estimates;
    std::vector<SkippedTarget> skipped;
};

struct WarningEvent {
    double t_s = 0.0;
    int target_index = 0;
    double closing_speed_mps = 0.0;
    double ttc_s = 0.0;
};

// Observer invoked with each rendered frame, e.g. to write image files.
using FrameSink =
    std::function<void(std::size_t frame_index, const Image& left, const Image& right)>;

// Renders every frame of the advanced scene, block-matches each target
// on its left ground-truth box with d_max = H/4, and converts the
// matched disparity to a range. Per-target failures are recorded as
// skips, not errors. Estimates appear in frame order, targets in scene
// order within a frame.
inline SequenceResult run_sequence(const Scene& scene,
                                   const std::vector<FrameSpec>& frames,
                                   const FrameSink& on_frame = {}) {
    validate(scene);
    if (frames.empty())
        throw std::domain_error("at least one frame is required");
    for (std::size_t i = 1; i < frames.size(); ++i) {
        if (!(frames[i].t_s > frames[i - 1].t_s))
            throw std::domain_error("frame timestamps must be strictly increasing");
    }

    const int d_max = scene.camera.h_resolution / 4;
    SequenceResult result;
    for (std::size_t fi = 0; fi < frames.size(); ++fi) {
        const FrameSpec& frame = frames[fi];
        Scene advanced = scene;
        for (TargetSpec& target : advanced.targets) {
            target.range_m -= frame.ego_advance_m;
            if (!(target.range_m > 0.0))
                throw std::domain_error(
                    "ego advance pushes a target to non-positive range");
        }

        const RenderResult rendered = render_pair(advanced);
        if (on_frame)
            on_frame(fi, rendered.left, rendered.right);

        for (std::size_t ti = 0; ti < advanced.targets.size(); ++ti) {
            const int target_index = static_cast<int>(ti);
            if (!rendered.left_boxes[ti]) {
                result.skipped.push_back({frame.t_s, target_index, "out of view"});
                continue;
            }
            int matched;
            try {
                matched = block_match(rendered.left, rendered.right,
                                      *rendered.left_boxes[ti], d_max);
            } catch (const std::runtime_error&) {
                result.skipped.push_back({frame.t_s, target_index, "no overlap"});
                continue;
            }
            if (matched < 1) {
                result.skipped.push_back(
                    {frame.t_s, target_index, "non-positive disparity"});
                continue;
            }
            const RangeEstimate est = range_from_disparity(
                scene.rig.baseline_m, scene.camera.h_resolution,
                scene.camera.fov_rad, Disparity{matched});
            result.estimates.push_back({frame.t_s, target_index, matched,
                                        est.range_m, advanced.targets[ti].range_m});
        }
    }
    return result;
}

// Emits a warning for every consecutive estimate pair of a target whose
// closing speed is positive and whose time to collision falls below the
// threshold. Estimates must be time-ordered per target.
inline std::vector<WarningEvent> closing_warnings(
    const std::vector<FrameEstimate>& estimates, double ttc_threshold_s = 2.0) {
    if (!(ttc_threshold_s > 0.0))
        throw std::domain_error("ttc threshold must be positive");

    struct LastSeen {
        double t_s;
        double range_m;
    };
    std::unordered_map<int, LastSeen> last;
    std::vector<WarningEvent> events;
    for (const FrameEstimate& est : estimates) {
        const auto it = last.find(est.target_index);
        if (it != last.end()) {
            const double dt = est.t_s - it->second.t_s;
            if (!(dt > 0.0))
                throw std::domain_error(
                    "estimates must have strictly increasing timestamps per target");
            const double speed = (it->second.range_m - est.range_m) / dt;
            if (speed > 0.0) {
                const double ttc = est.range_m / speed;
                if (ttc < ttc_threshold_s)
                    events.push_back({est.t_s, est.target_index, speed, ttc});
            }
        }
        last[est.target_index] = {est.t_s, est.range_m};
    }
    return events;
}

}  // namespace stereorange
