#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "tavkit/scene_detect.hpp"

namespace tavkit {

// Opens a video path as a frame stream. The CLI plugs in the decoder
// subprocess here; tests plug in direct Y4M/PPM readers.
using SourceOpener =
    std::function<std::unique_ptr<FrameSource>(const std::string& path)>;

struct SegmentCount {
    int segment_count = 1; // detected cuts + 1
    std::vector<double> cut_times;
};

SegmentCount count_segments(FrameSource& src, const DetectorConfig& cfg);

struct EvalInput {
    std::string video_path;
    std::string group;
    std::string prompt;
};

struct EvalRecord {
    std::string video_path;
    std::string group;
    std::string prompt;
    int segment_count = 1;
    std::vector<double> cut_times;
};

struct EvalFailure {
    std::string video_path;
    std::string group;
    std::string error;
};

struct GroupReport {
    std::string group;
    int n_videos = 0;
    double average_segments = 0.0;
    int min_segments = 0;
    int max_segments = 0;
    int failures = 0;
    std::string config_hash; // ties the counts to the detector settings
};

struct EvalSummary {
    std::vector<GroupReport> reports;
    std::vector<EvalRecord> records;
    std::vector<EvalFailure> failed;
    std::string config_hash;
};

// FNV-1a over the canonical rendering of the config values.
std::string detector_config_hash(const DetectorConfig& cfg);

// Counts segments per video (in parallel) and aggregates one report per
// group. Unreadable videos are excluded from the mean and tallied as
// failures. Groups are ordered A, B, C first, then lexicographically.
EvalSummary evaluate_group(const std::vector<EvalInput>& videos,
                           const DetectorConfig& cfg, const SourceOpener& opener,
                           unsigned workers = 1);

enum class ReportFormat { json, csv };

// CSV columns: group,n_videos,average_segments,min,max,failures. Averages
// carry three decimals in both formats.
void emit_report(const std::vector<GroupReport>& reports, ReportFormat format,
                 std::ostream& sink);

} // namespace tavkit
