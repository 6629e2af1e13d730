// block_match.hpp - integer-disparity SAD block matching along epipolar
// rows. The rig is assumed rectified, so a block in the left image is
// searched only along the same rows of the right image.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "stereorange/image.hpp"
#include "stereorange/render.hpp"

namespace stereorange {

// Returns the integer disparity k in [0, d_max] minimizing the mean
// absolute intensity difference between the boxed block of the left
// image and the block shifted k pixels leftward in the right image.
// Columns shifted off the right image are excluded; the cost is
// normalized by the number of valid pixels. Ties break toward smaller k.
//
// Throws std::invalid_argument for an empty or out-of-bounds box and
// std::runtime_error when no candidate shift has any valid pixel.
inline int block_match(const Image& left, const Image& right,
                       const BoundingBox& box, int d_max) {
    if (box.empty())
        throw std::invalid_argument("block_match: empty box");
    if (box.u_min < 0 || box.u_max > left.width || box.v_min < 0 ||
        box.v_max > left.height)
        throw std::invalid_argument("block_match: box outside the left image");
    if (left.height != right.height)
        throw std::invalid_argument("block_match: image heights differ");
    if (d_max < 0)
        throw std::invalid_argument("block_match: d_max must be >= 0");

    int best_k = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= d_max; ++k) {
        const int u_lo = std::max(box.u_min, k);           // need u - k >= 0
        const int u_hi = std::min(box.u_max, right.width + k);
        if (u_lo >= u_hi)
            continue;
        std::uint64_t sum = 0;
        for (int v = box.v_min; v < box.v_max; ++v) {
            for (int u = u_lo; u < u_hi; ++u) {
                sum += static_cast<std::uint64_t>(
                    std::abs(static_cast<int>(left.at(u, v)) -
                             static_cast<int>(right.at(u - k, v))));
            }
        }
        const std::uint64_t count =
            static_cast<std::uint64_t>(u_hi - u_lo) *
            static_cast<std::uint64_t>(box.v_max - box.v_min);
        const double cost = static_cast<double>(sum) / static_cast<double>(count);
        if (cost < best_cost) {
            best_cost = cost;
            best_k = k;
        }
    }
    if (best_k < 0)
        throw std::runtime_error("block_match: no shift overlaps the right image");
    return best_k;
}

}  // namespace stereorange
