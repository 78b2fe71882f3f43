#include "tavkit/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <variant>

#include "tavkit/worker_pool.hpp"

namespace tavkit {
namespace {

int group_rank(const std::string& g) {
    if (g == "A") return 0;
    if (g == "B") return 1;
    if (g == "C") return 2;
    return 3;
}

bool group_less(const std::string& a, const std::string& b) {
    int ra = group_rank(a), rb = group_rank(b);
    return ra != rb ? ra < rb : a < b;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

} // namespace

SegmentCount count_segments(FrameSource& src, const DetectorConfig& cfg) {
    CutList cuts = detect_cuts(src, cfg);
    SegmentCount out;
    out.segment_count = static_cast<int>(cuts.cuts.size()) + 1;
    out.cut_times.reserve(cuts.cuts.size());
    for (const Cut& c : cuts.cuts)
        out.cut_times.push_back(c.pts_seconds);
    return out;
}

std::string detector_config_hash(const DetectorConfig& cfg) {
    char canon[256];
    std::snprintf(canon, sizeof canon,
                  "wh=%.9g;ws=%.9g;wv=%.9g;thr=%.9g;minlen=%d;down=%d",
                  cfg.weight_h, cfg.weight_s, cfg.weight_v, cfg.threshold,
                  cfg.min_scene_len_frames, cfg.downscale_factor);
    std::uint64_t hash = 1469598103934665603ull;
    for (const char* p = canon; *p; ++p) {
        hash ^= static_cast<std::uint8_t>(*p);
        hash *= 1099511628211ull;
    }
    char out[24];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

EvalSummary evaluate_group(const std::vector<EvalInput>& videos,
                           const DetectorConfig& cfg, const SourceOpener& opener,
                           unsigned workers) {
    if (videos.empty())
        throw ArgumentError("no videos to evaluate");
    cfg.validate();

    EvalSummary summary;
    summary.config_hash = detector_config_hash(cfg);

    using Outcome = std::variant<EvalRecord, EvalFailure>;
    auto worker = [&](std::size_t i) -> Outcome {
        const EvalInput& in = videos[i];
        try {
            std::unique_ptr<FrameSource> src = opener(in.video_path);
            SegmentCount sc = count_segments(*src, cfg);
            return EvalRecord{in.video_path, in.group, in.prompt, sc.segment_count,
                              std::move(sc.cut_times)};
        } catch (const std::exception& e) {
            return EvalFailure{in.video_path, in.group, e.what()};
        }
    };

    parallel_for_ordered(videos.size(), workers, worker,
                         [&](std::size_t, Outcome&& o) {
                             if (std::holds_alternative<EvalRecord>(o))
                                 summary.records.push_back(
                                     std::move(std::get<EvalRecord>(o)));
                             else
                                 summary.failed.push_back(
                                     std::move(std::get<EvalFailure>(o)));
                         });

    struct Agg {
        long sum = 0;
        int n = 0;
        int min = 0;
        int max = 0;
        int failures = 0;
    };
    std::map<std::string, Agg> by_group;
    for (const EvalRecord& r : summary.records) {
        Agg& a = by_group[r.group];
        if (a.n == 0) {
            a.min = a.max = r.segment_count;
        } else {
            a.min = std::min(a.min, r.segment_count);
            a.max = std::max(a.max, r.segment_count);
        }
        a.sum += r.segment_count;
        ++a.n;
    }
    for (const EvalFailure& f : summary.failed)
        ++by_group[f.group].failures;

    for (const auto& [group, agg] : by_group) {
        GroupReport rep;
        rep.group = group;
        rep.n_videos = agg.n;
        rep.average_segments =
            agg.n > 0 ? static_cast<double>(agg.sum) / agg.n : 0.0;
        rep.min_segments = agg.min;
        rep.max_segments = agg.max;
        rep.failures = agg.failures;
        rep.config_hash = summary.config_hash;
        summary.reports.push_back(std::move(rep));
    }
    std::sort(summary.reports.begin(), summary.reports.end(),
              [](const GroupReport& a, const GroupReport& b) {
                  return group_less(a.group, b.group);
              });
    return summary;
}

void emit_report(const std::vector<GroupReport>& reports, ReportFormat format,
                 std::ostream& sink) {
    if (reports.empty())
        throw ArgumentError("no group reports to emit");

    char buf[512];
    if (format == ReportFormat::csv) {
        sink << "group,n_videos,average_segments,min,max,failures\n";
        for (const GroupReport& r : reports) {
            std::snprintf(buf, sizeof buf, "%s,%d,%.3f,%d,%d,%d\n", r.group.c_str(),
                          r.n_videos, r.average_segments, r.min_segments,
                          r.max_segments, r.failures);
            sink << buf;
        }
    } else {
        sink << "[\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const GroupReport& r = reports[i];
            std::snprintf(buf, sizeof buf,
                          "    {\"group\": \"%s\", \"n_videos\": %d, "
                          "\"average_segments\": %.3f, \"min\": %d, \"max\": %d, "
                          "\"failures\": %d, \"config_hash\": \"%s\"}%s\n",
                          json_escape(r.group).c_str(), r.n_videos,
                          r.average_segments, r.min_segments, r.max_segments,
                          r.failures, r.config_hash.c_str(),
                          i + 1 < reports.size() ? "," : "");
            sink << buf;
        }
        sink << "]\n";
    }
    if (!sink)
        throw IoError("report write failed");
}

} // namespace tavkit
