#pragma once

#include <optional>

#include "tavkit/frame.hpp"

namespace tavkit {

struct ValidationConfig {
    double diff_threshold = 50.0;
    // Stop scanning at the first exceedance. With this off, max_diff is the
    // true global maximum over all frame pairs.
    bool early_exit = true;
};

struct ValidationResult {
    bool detected = false;
    double max_diff = 0.0;
    // Index of the second frame of the maximal (or first exceeding) pair;
    // absent when the clip has fewer than two frames.
    std::optional<long> argmax_frame;
    double threshold_used = 50.0;
};

// Confirms a clip contains a visible transition: the mean absolute
// difference over all RGB samples of some consecutive frame pair must
// strictly exceed the threshold.
ValidationResult validate_clip(FrameSource& src, const ValidationConfig& cfg = {});

} // namespace tavkit
