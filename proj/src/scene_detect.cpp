#include "tavkit/scene_detect.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "tavkit/color.hpp"

namespace tavkit {

void DetectorConfig::validate() const {
    if (weight_h < 0 || weight_s < 0 || weight_v < 0)
        throw ArgumentError("channel weights must be nonnegative");
    if (weight_h + weight_s + weight_v <= 0)
        throw ArgumentError("channel weights must not all be zero");
    if (threshold < 0)
        throw ArgumentError("threshold must be nonnegative");
    if (min_scene_len_frames < 0)
        throw ArgumentError("min_scene_len_frames must be nonnegative");
    if (downscale_factor < 0)
        throw ArgumentError("downscale factor must be positive (or 0 for auto)");
}

double channel_delta(std::span<const std::uint8_t> a,
                     std::span<const std::uint8_t> b) {
    if (a.size() != b.size())
        throw ArgumentError("plane size mismatch: " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
    if (a.empty())
        throw ArgumentError("channel_delta on empty planes");
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
    }
    return static_cast<double>(sum) / static_cast<double>(a.size());
}

ChangeScore change_score(const HsvFrame& prev, const HsvFrame& cur,
                         const DetectorConfig& cfg) {
    if (prev.width != cur.width || prev.height != cur.height)
        throw ArgumentError("frame size mismatch in change_score");
    if (cur.index != prev.index + 1)
        throw ArgumentError("change_score requires consecutive frames, got " +
                            std::to_string(prev.index) + " then " +
                            std::to_string(cur.index));
    double value = cfg.weight_h * channel_delta(prev.h, cur.h) +
                   cfg.weight_s * channel_delta(prev.s, cur.s) +
                   cfg.weight_v * channel_delta(prev.v, cur.v);
    return {cur.index, value};
}

int auto_downscale_factor(int width) {
    int f = width / 256;
    return f < 1 ? 1 : f;
}

CutList detect_cuts(FrameSource& src, const DetectorConfig& cfg, bool keep_trace) {
    cfg.validate();

    CutList out;
    if (keep_trace)
        out.trace.emplace();

    int factor = cfg.downscale_factor == 0 ? auto_downscale_factor(src.info().width)
                                           : cfg.downscale_factor;

    std::optional<HsvFrame> prev;
    long last_cut_index = 0;
    while (std::optional<RawFrame> frame = src.next()) {
        HsvFrame cur = factor > 1 ? rgb_to_hsv(downscale(*frame, factor))
                                  : rgb_to_hsv(*frame);
        if (!prev) {
            // No predecessor: score undefined, traced as 0.
            if (out.trace)
                out.trace->push_back({cur.index, cur.pts_seconds, 0.0, false});
            prev = std::move(cur);
            continue;
        }
        ChangeScore score = change_score(*prev, cur, cfg);
        bool is_cut = score.value > cfg.threshold &&
                      score.frame_index - last_cut_index >= cfg.min_scene_len_frames;
        if (is_cut) {
            out.cuts.push_back({score.frame_index, frame->pts_seconds});
            last_cut_index = score.frame_index;
        }
        if (out.trace)
            out.trace->push_back({cur.index, cur.pts_seconds, score.value, is_cut});
        prev = std::move(cur);
    }
    return out;
}

void export_trace(const CutList& cuts, std::ostream& sink) {
    if (!cuts.trace)
        throw ArgumentError("export_trace called without a recorded trace");
    sink << "frame_index,pts_seconds,score,is_cut\n";
    char buf[128];
    for (const TracePoint& p : *cuts.trace) {
        std::snprintf(buf, sizeof buf, "%ld,%.6f,%.6f,%s\n", p.frame_index,
                      p.pts_seconds, p.score, p.is_cut ? "true" : "false");
        sink << buf;
    }
    if (!sink)
        throw IoError("trace write failed");
}

} // namespace tavkit
