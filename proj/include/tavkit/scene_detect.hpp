#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "tavkit/frame.hpp"

namespace tavkit {

struct DetectorConfig {
    double weight_h = 1.0 / 3.0;
    double weight_s = 1.0 / 3.0;
    double weight_v = 1.0 / 3.0;
    double threshold = 27.0;
    int min_scene_len_frames = 15;
    // 1 = full resolution, 0 = auto (max(1, width/256)).
    int downscale_factor = 0;

    void validate() const;
};

struct Cut {
    long frame_index = 0;
    double pts_seconds = 0.0;
};

struct TracePoint {
    long frame_index = 0;
    double pts_seconds = 0.0;
    double score = 0.0;
    bool is_cut = false;
};

struct CutList {
    std::vector<Cut> cuts;
    std::optional<std::vector<TracePoint>> trace;
};

struct ChangeScore {
    long frame_index = 0;
    double value = 0.0;
};

// Mean absolute per-pixel difference between two equally sized planes.
double channel_delta(std::span<const std::uint8_t> a,
                     std::span<const std::uint8_t> b);

// Weighted sum of the H, S and V channel deltas of two consecutive frames.
ChangeScore change_score(const HsvFrame& prev, const HsvFrame& cur,
                         const DetectorConfig& cfg);

int auto_downscale_factor(int width);

// Streams the source once and records a cut at every frame whose change
// score strictly exceeds the threshold, debounced so consecutive cuts are at
// least min_scene_len_frames apart (measured from frame 0 for the first cut).
CutList detect_cuts(FrameSource& src, const DetectorConfig& cfg,
                    bool keep_trace = false);

// CSV: frame_index,pts_seconds,score,is_cut
void export_trace(const CutList& cuts, std::ostream& sink);

} // namespace tavkit
