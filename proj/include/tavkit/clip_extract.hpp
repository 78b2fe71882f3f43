#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tavkit/scene_detect.hpp"

namespace tavkit {

enum class CutSelection { first_only, all };

struct ExtractionConfig {
    double padding_seconds = 5.0;
    double max_clip_seconds = 10.0;
    CutSelection cut_selection = CutSelection::first_only;

    void validate() const;
};

// A transition-centered clip window. `degenerate` marks windows whose
// truncation pushed the end before the transition itself (only possible when
// max_clip_seconds < padding_seconds); such clips are useless and skipped.
struct ClipSpec {
    std::string source_path;
    std::string video_name;
    double start_time = 0.0;
    double end_time = 0.0;
    double transition_time = 0.0;
    bool degenerate = false;

    double duration() const { return end_time - start_time; }
};

struct RenderedCommand {
    std::string command;
    std::string output_path;
};

// Matches the conventional seek/trim/re-encode cutter invocation.
inline constexpr std::string_view kDefaultCutTemplate =
    "ffmpeg -y -loglevel error -ss {start} -to {end} -i {input} "
    "-c:v libx264 -c:a aac {output}";

// Everything before the first '.' of the path's basename.
std::string video_basename(const std::string& path);

std::vector<double> select_transitions(const CutList& cuts,
                                       const ExtractionConfig& cfg);

// start = max(0, t - padding), end = min(duration, t + padding), then the
// window is truncated to max_clip_seconds from the start.
std::pair<double, double> clip_bounds(double t, double video_duration,
                                      const ExtractionConfig& cfg);

ClipSpec make_clip_spec(const std::string& source_path, double t,
                        double video_duration, const ExtractionConfig& cfg);

// "<video_name>_<floor(start)>-<floor(end)>.mp4"
std::string clip_output_name(const ClipSpec& spec);

// Substitutes {input}, {start}, {end}, {output} into the template. Purely
// textual; never touches the filesystem.
RenderedCommand render_cut_command(const ClipSpec& spec, std::string_view tmpl,
                                   const std::string& output_dir);

} // namespace tavkit
