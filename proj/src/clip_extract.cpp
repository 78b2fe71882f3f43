#include "tavkit/clip_extract.hpp"

#include <charconv>
#include <cmath>

namespace tavkit {
namespace {

// Shortest decimal form that round-trips the double, so templates carry full
// precision without trailing digit noise.
std::string format_seconds(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void replace_all(std::string& s, std::string_view key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = s.find(key, pos)) != std::string::npos) {
        s.replace(pos, key.size(), value);
        pos += value.size();
    }
}

} // namespace

void ExtractionConfig::validate() const {
    if (padding_seconds < 0)
        throw ArgumentError("padding_seconds must be nonnegative");
    if (max_clip_seconds <= 0)
        throw ArgumentError("max_clip_seconds must be positive");
}

std::string video_basename(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

std::vector<double> select_transitions(const CutList& cuts,
                                       const ExtractionConfig& cfg) {
    std::vector<double> out;
    if (cuts.cuts.empty())
        return out;
    if (cfg.cut_selection == CutSelection::first_only) {
        out.push_back(cuts.cuts.front().pts_seconds);
    } else {
        out.reserve(cuts.cuts.size());
        for (const Cut& c : cuts.cuts)
            out.push_back(c.pts_seconds);
    }
    return out;
}

std::pair<double, double> clip_bounds(double t, double video_duration,
                                      const ExtractionConfig& cfg) {
    if (t < 0 || t > video_duration)
        throw ArgumentError("transition time " + std::to_string(t) +
                            " outside [0, " + std::to_string(video_duration) + "]");
    double start = std::max(0.0, t - cfg.padding_seconds);
    double end = std::min(video_duration, t + cfg.padding_seconds);
    if (end - start > cfg.max_clip_seconds)
        end = start + cfg.max_clip_seconds;
    return {start, end};
}

ClipSpec make_clip_spec(const std::string& source_path, double t,
                        double video_duration, const ExtractionConfig& cfg) {
    auto [start, end] = clip_bounds(t, video_duration, cfg);
    ClipSpec spec;
    spec.source_path = source_path;
    spec.video_name = video_basename(source_path);
    spec.start_time = start;
    spec.end_time = end;
    spec.transition_time = t;
    spec.degenerate = end < t;
    return spec;
}

std::string clip_output_name(const ClipSpec& spec) {
    return spec.video_name + "_" +
           std::to_string(static_cast<long long>(std::floor(spec.start_time))) + "-" +
           std::to_string(static_cast<long long>(std::floor(spec.end_time))) + ".mp4";
}

RenderedCommand render_cut_command(const ClipSpec& spec, std::string_view tmpl,
                                   const std::string& output_dir) {
    for (std::string_view key : {"{input}", "{start}", "{end}", "{output}"}) {
        if (tmpl.find(key) == std::string_view::npos)
            throw TemplateError("cut command template is missing " + std::string(key),
                                std::string(key));
    }
    RenderedCommand out;
    out.output_path = output_dir.empty() ? clip_output_name(spec)
                                         : output_dir + "/" + clip_output_name(spec);
    out.command = std::string(tmpl);
    replace_all(out.command, "{input}", spec.source_path);
    replace_all(out.command, "{start}", format_seconds(spec.start_time));
    replace_all(out.command, "{end}", format_seconds(spec.end_time));
    replace_all(out.command, "{output}", out.output_path);
    return out;
}

} // namespace tavkit
