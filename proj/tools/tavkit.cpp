// tavkit - scene-transition dataset toolkit
//
// Subcommands: detect, build, extract, validate, compose, split, evaluate.
// Exit codes: 0 success, 1 usage/config error or total failure, 2 partial
// per-item failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tavkit/clip_extract.hpp"
#include "tavkit/color.hpp"
#include "tavkit/config.hpp"
#include "tavkit/evaluator.hpp"
#include "tavkit/manifest.hpp"
#include "tavkit/ppm.hpp"
#include "tavkit/prompt_compose.hpp"
#include "tavkit/scene_detect.hpp"
#include "tavkit/subprocess.hpp"
#include "tavkit/transition_validate.hpp"
#include "tavkit/worker_pool.hpp"
#include "tavkit/y4m.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace tavkit;

namespace {

constexpr const char* kDefaultDecoder =
    "ffmpeg -loglevel error -nostdin -i {input} -f yuv4mpegpipe -pix_fmt "
    "yuv420p -an -";

struct PipelineConfig {
    std::string decoder_command = kDefaultDecoder;
    unsigned workers = default_worker_count();
    Rational fps{30, 1}; // for raw image sequences only
    DetectorConfig detector;
    std::optional<double> min_scene_seconds;
    ExtractionConfig extraction;
    std::string cut_command{kDefaultCutTemplate};
    std::string output_dir = ".";
    ValidationConfig validation;
    SplitSpec split_spec;
    PromptStyle style = PromptStyle::explicit_transition;
    bool trace = false;
};

std::string replace_input(std::string tmpl, const std::string& path) {
    const std::string key = "{input}";
    std::size_t pos;
    bool found = false;
    while ((pos = tmpl.find(key)) != std::string::npos) {
        tmpl.replace(pos, key.size(), "'" + path + "'");
        found = true;
    }
    if (!found)
        throw TemplateError("decoder command template is missing {input}",
                            "{input}");
    return tmpl;
}

// Y4M files and PPM directories are read directly; anything else goes
// through the decoder subprocess.
std::unique_ptr<FrameSource> open_video(const std::string& path,
                                        const PipelineConfig& cfg) {
    if (fs::is_directory(path))
        return open_ppm_sequence(path, cfg.fps);
    std::string ext = fs::path(path).extension().string();
    if (ext == ".y4m")
        return open_y4m(std::make_unique<io::FileReader>(path));
    if (!fs::exists(path))
        throw IoError("cannot open file: " + path);
    return open_y4m(open_command_output(replace_input(cfg.decoder_command, path)));
}

// Frames of [start_time, end_time), as an external cutter would keep them.
class WindowSource final : public FrameSource {
public:
    WindowSource(std::unique_ptr<FrameSource> inner, double start, double end)
        : inner_(std::move(inner)), start_(start), end_(end) {}

    const StreamInfo& info() const override { return inner_->info(); }

    std::optional<RawFrame> next() override {
        while (auto f = inner_->next()) {
            if (f->pts_seconds >= end_)
                return std::nullopt;
            if (f->pts_seconds >= start_)
                return f;
        }
        return std::nullopt;
    }

private:
    std::unique_ptr<FrameSource> inner_;
    double start_;
    double end_;
};

DetectorConfig detector_for_stream(const PipelineConfig& cfg,
                                   const StreamInfo& info) {
    DetectorConfig d = cfg.detector;
    if (cfg.min_scene_seconds)
        d.min_scene_len_frames = static_cast<int>(
            std::lround(*cfg.min_scene_seconds * info.fps.as_double()));
    return d;
}

Rational parse_fps(const std::string& text) {
    std::size_t colon = text.find(':');
    Rational fps;
    try {
        if (colon == std::string::npos) {
            fps = {std::stoi(text), 1};
        } else {
            fps = {std::stoi(text.substr(0, colon)),
                   std::stoi(text.substr(colon + 1))};
        }
    } catch (const std::exception&) {
        throw ArgumentError("bad fps \"" + text + "\" (expected N or N:D)");
    }
    if (fps.num < 1 || fps.den < 1)
        throw ArgumentError("bad fps \"" + text + "\"");
    return fps;
}

int exit_code(std::size_t failures, std::size_t total) {
    if (failures == 0)
        return 0;
    return failures == total ? 1 : 2;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open file for writing: " + path);
    out << text;
    if (!out)
        throw IoError("write failed: " + path);
}

std::vector<std::string> split_tsv(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            cols.push_back(line.substr(pos));
            break;
        }
        cols.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return cols;
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(e.what()) + " in " + path,
                         e.byte > 0 ? e.byte - 1 : 0);
    }
}

std::string json_string(const ordered_json& j, const char* key,
                        const std::string& fallback = "") {
    return j.contains(key) && j[key].is_string() ? j[key].get<std::string>()
                                                 : fallback;
}

// ---------------------------------------------------------------- corpora

struct CorpusEntry {
    std::string path;
    std::optional<std::string> category;
    std::optional<std::string> prev;
    std::optional<std::string> next;
};

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    ordered_json doc = load_json_file(path);
    if (!doc.is_array())
        throw SchemaError("corpus manifest root is not an array", 0);
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const ordered_json& j = doc[i];
        CorpusEntry e;
        e.path = json_string(j, "path", json_string(j, "file_path"));
        if (e.path.empty())
            throw SchemaError("corpus record " + std::to_string(i) +
                              " is missing \"path\"", i);
        if (j.contains("category") && j["category"].is_string())
            e.category = j["category"].get<std::string>();
        if (j.contains("prev") && j["prev"].is_string())
            e.prev = j["prev"].get<std::string>();
        if (j.contains("next") && j["next"].is_string())
            e.next = j["next"].get<std::string>();
        out.push_back(std::move(e));
    }
    return out;
}

struct CaptionRow {
    std::string video_name;
    std::string prev;
    std::optional<std::string> next;
};

std::vector<CaptionRow> load_caption_table(const std::string& path) {
    std::vector<CaptionRow> rows;
    if (fs::path(path).extension() == ".json") {
        ordered_json doc = load_json_file(path);
        if (!doc.is_array())
            throw SchemaError("caption table root is not an array", 0);
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const ordered_json& j = doc[i];
            CaptionRow row;
            row.video_name = json_string(j, "video_name");
            row.prev = json_string(j, "prev");
            if (row.prev.empty())
                throw SchemaError("caption record " + std::to_string(i) +
                                  " is missing \"prev\"", i);
            if (j.contains("next") && j["next"].is_string())
                row.next = j["next"].get<std::string>();
            rows.push_back(std::move(row));
        }
        return rows;
    }
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> cols = split_tsv(line);
        CaptionRow row;
        if (cols.size() >= 3) {
            row.video_name = cols[0];
            row.prev = cols[1];
            row.next = cols[2];
        } else if (cols.size() == 2) {
            row.prev = cols[0];
            row.next = cols[1];
        } else {
            throw ParseError("caption line " + std::to_string(lineno) +
                             " needs 2 or 3 tab-separated columns", 0);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<EvalInput> load_grouping(const std::string& path) {
    std::vector<EvalInput> out;
    if (fs::path(path).extension() == ".json") {
        ordered_json doc = load_json_file(path);
        if (!doc.is_array())
            throw SchemaError("grouping file root is not an array", 0);
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const ordered_json& j = doc[i];
            EvalInput in;
            in.video_path = json_string(j, "path", json_string(j, "video_path"));
            if (in.video_path.empty())
                throw SchemaError("grouping record " + std::to_string(i) +
                                  " is missing \"path\"", i);
            in.group = json_string(j, "group");
            in.prompt = json_string(j, "prompt");
            out.push_back(std::move(in));
        }
        return out;
    }
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> cols = split_tsv(line);
        if (cols.size() < 2)
            throw ParseError("grouping line " + std::to_string(lineno) +
                             " needs path<TAB>group[<TAB>prompt]", 0);
        out.push_back({cols[0], cols[1], cols.size() > 2 ? cols[2] : ""});
    }
    return out;
}

// ---------------------------------------------------------------- commands

int cmd_detect(const std::vector<std::string>& inputs, const PipelineConfig& cfg,
               const std::string& trace_dir) {
    struct Result {
        ordered_json line;
        bool failed = false;
        std::string trace_csv;
    };

    auto job = [&](std::size_t i) -> Result {
        const std::string& path = inputs[i];
        Result res;
        res.line["input"] = path;
        try {
            auto src = open_video(path, cfg);
            DetectorConfig d = detector_for_stream(cfg, src->info());
            bool want_trace = cfg.trace || !trace_dir.empty();
            CutList cuts = detect_cuts(*src, d, want_trace);
            ordered_json arr = ordered_json::array();
            for (const Cut& c : cuts.cuts)
                arr.push_back({{"frame_index", c.frame_index},
                               {"pts_seconds", c.pts_seconds}});
            res.line["cuts"] = std::move(arr);
            res.line["n_cuts"] = cuts.cuts.size();
            if (want_trace) {
                std::ostringstream os;
                export_trace(cuts, os);
                res.trace_csv = os.str();
            }
        } catch (const std::exception& e) {
            res.line = {{"input", path}, {"error", e.what()}};
            res.failed = true;
        }
        return res;
    };

    std::size_t failures = 0;
    parallel_for_ordered(
        inputs.size(), cfg.workers, job, [&](std::size_t i, Result&& r) {
            std::cout << r.line.dump() << "\n";
            if (r.failed)
                ++failures;
            if (!r.trace_csv.empty()) {
                fs::path dir = trace_dir.empty() ? fs::path(inputs[i]).parent_path()
                                                 : fs::path(trace_dir);
                if (!trace_dir.empty())
                    fs::create_directories(dir);
                fs::path out =
                    dir / (fs::path(inputs[i]).filename().string() + ".trace.csv");
                write_text_file(out.string(), r.trace_csv);
            }
        });
    return exit_code(failures, inputs.size());
}

int cmd_validate(const std::vector<std::string>& inputs,
                 const PipelineConfig& cfg) {
    auto job = [&](std::size_t i) -> std::pair<ordered_json, bool> {
        const std::string& path = inputs[i];
        try {
            auto src = open_video(path, cfg);
            ValidationResult res = validate_clip(*src, cfg.validation);
            ordered_json line{{"input", path},
                              {"detected", res.detected},
                              {"max_diff", res.max_diff},
                              {"threshold", res.threshold_used}};
            if (res.argmax_frame)
                line["argmax_frame"] = *res.argmax_frame;
            return {std::move(line), false};
        } catch (const std::exception& e) {
            return {ordered_json{{"input", path}, {"error", e.what()}}, true};
        }
    };
    std::size_t failures = 0;
    parallel_for_ordered(inputs.size(), cfg.workers, job,
                         [&](std::size_t, std::pair<ordered_json, bool>&& r) {
                             std::cout << r.first.dump() << "\n";
                             if (r.second)
                                 ++failures;
                         });
    return exit_code(failures, inputs.size());
}

struct BuildOutcome {
    bool failed = false;
    std::string error;
    bool has_cut = false;
    int extracted = 0;
    int validated = 0;
    int dropped = 0;
    int degenerate = 0;
    std::vector<ClipRecord> records;
    std::vector<std::string> commands;
};

BuildOutcome build_one(const CorpusEntry& entry, const PipelineConfig& cfg,
                       bool execute) {
    BuildOutcome out;
    try {
        auto src = open_video(entry.path, cfg);
        StreamInfo info = src->info();
        DetectorConfig d = detector_for_stream(cfg, info);
        CutList cuts = detect_cuts(*src, d, true);
        double duration =
            cuts.trace ? cuts.trace->size() * info.frame_duration() : 0.0;
        if (cuts.cuts.empty())
            return out;
        out.has_cut = true;

        std::string text;
        if (entry.prev) {
            SceneCaptions captions{*entry.prev, entry.next};
            text = compose(captions, cfg.style);
        }

        for (double t : select_transitions(cuts, cfg.extraction)) {
            ClipSpec spec = make_clip_spec(entry.path, t, duration, cfg.extraction);
            if (spec.degenerate) {
                ++out.degenerate;
                continue;
            }
            ++out.extracted;
            RenderedCommand cmd =
                render_cut_command(spec, cfg.cut_command, cfg.output_dir);
            out.commands.push_back(cmd.command);

            bool valid;
            if (execute) {
                if (run_command(cmd.command) != 0)
                    throw IoError("cutter failed: " + cmd.command);
                auto clip = open_video(cmd.output_path, cfg);
                valid = validate_clip(*clip, cfg.validation).detected;
            } else {
                // no cutter run: validate the window in the source directly
                WindowSource window(open_video(entry.path, cfg), spec.start_time,
                                    spec.end_time);
                valid = validate_clip(window, cfg.validation).detected;
            }
            if (!valid) {
                ++out.dropped;
                continue;
            }
            ++out.validated;

            ClipRecord rec;
            rec.file_path = cmd.output_path;
            rec.text = text;
            rec.video_name = spec.video_name;
            rec.start_time = spec.start_time;
            rec.end_time = spec.end_time;
            rec.duration = spec.duration();
            rec.transition_frame = spec.transition_time;
            rec.category = entry.category;
            out.records.push_back(std::move(rec));
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
    }
    return out;
}

int cmd_build(const std::string& corpus_path, const PipelineConfig& cfg,
              bool execute, ManifestMode mode, const std::string& manifest_path,
              const std::string& commands_path) {
    std::vector<CorpusEntry> corpus = load_corpus(corpus_path);
    if (corpus.empty()) {
        std::cerr << "tavkit build: corpus is empty\n";
        return 1;
    }
    fs::create_directories(cfg.output_dir);

    std::vector<ClipRecord> records;
    std::vector<std::string> commands;
    std::size_t failures = 0, with_cuts = 0, extracted = 0, validated = 0,
                dropped = 0, degenerate = 0;

    parallel_for_ordered(
        corpus.size(), cfg.workers,
        [&](std::size_t i) { return build_one(corpus[i], cfg, execute); },
        [&](std::size_t i, BuildOutcome&& out) {
            if (out.failed) {
                ++failures;
                std::cerr << "tavkit build: " << corpus[i].path << ": "
                          << out.error << "\n";
                return;
            }
            with_cuts += out.has_cut ? 1 : 0;
            extracted += out.extracted;
            validated += out.validated;
            dropped += out.dropped;
            degenerate += out.degenerate;
            if (out.degenerate > 0)
                std::cerr << "tavkit build: " << corpus[i].path << ": skipped "
                          << out.degenerate << " degenerate clip window(s)\n";
            for (ClipRecord& r : out.records)
                records.push_back(std::move(r));
            for (std::string& c : out.commands)
                commands.push_back(std::move(c));
        });

    std::string manifest =
        manifest_path.empty() ? cfg.output_dir + "/manifest.json" : manifest_path;
    write_manifest_file(records, manifest, mode);
    if (!commands_path.empty()) {
        std::string joined;
        for (const std::string& c : commands)
            joined += c + "\n";
        write_text_file(commands_path, joined);
    }

    ordered_json report{{"videos", corpus.size()},
                        {"videos_with_cuts", with_cuts},
                        {"clips_extracted", extracted},
                        {"clips_validated", validated},
                        {"clips_dropped", dropped},
                        {"clips_degenerate", degenerate},
                        {"failures", failures},
                        {"manifest", manifest}};
    std::cout << report.dump() << "\n";
    return exit_code(failures, corpus.size());
}

int cmd_extract(const std::vector<std::string>& inputs, const PipelineConfig& cfg,
                bool execute) {
    fs::create_directories(cfg.output_dir);
    auto job = [&](std::size_t i) -> std::pair<ordered_json, bool> {
        const std::string& path = inputs[i];
        try {
            auto src = open_video(path, cfg);
            StreamInfo info = src->info();
            DetectorConfig d = detector_for_stream(cfg, info);
            CutList cuts = detect_cuts(*src, d, true);
            double duration =
                cuts.trace ? cuts.trace->size() * info.frame_duration() : 0.0;
            ordered_json clips = ordered_json::array();
            for (double t : select_transitions(cuts, cfg.extraction)) {
                ClipSpec spec = make_clip_spec(path, t, duration, cfg.extraction);
                if (spec.degenerate)
                    continue;
                RenderedCommand cmd =
                    render_cut_command(spec, cfg.cut_command, cfg.output_dir);
                if (execute && run_command(cmd.command) != 0)
                    throw IoError("cutter failed: " + cmd.command);
                clips.push_back({{"start_time", spec.start_time},
                                 {"end_time", spec.end_time},
                                 {"transition_time", spec.transition_time},
                                 {"output", cmd.output_path},
                                 {"command", cmd.command}});
            }
            return {ordered_json{{"input", path}, {"clips", std::move(clips)}},
                    false};
        } catch (const std::exception& e) {
            return {ordered_json{{"input", path}, {"error", e.what()}}, true};
        }
    };
    std::size_t failures = 0;
    parallel_for_ordered(inputs.size(), cfg.workers, job,
                         [&](std::size_t, std::pair<ordered_json, bool>&& r) {
                             std::cout << r.first.dump() << "\n";
                             if (r.second)
                                 ++failures;
                         });
    return exit_code(failures, inputs.size());
}

int cmd_compose(const std::string& captions_path, const std::string& prev,
                const std::string& next, PromptStyle style,
                const std::string& out_path) {
    std::vector<CaptionRow> rows;
    if (!captions_path.empty()) {
        rows = load_caption_table(captions_path);
    } else if (!prev.empty()) {
        CaptionRow row;
        row.prev = prev;
        if (!next.empty())
            row.next = next;
        rows.push_back(std::move(row));
    } else {
        std::cerr << "tavkit compose: need --captions or --prev\n";
        return 1;
    }
    std::string out;
    for (const CaptionRow& row : rows) {
        SceneCaptions c{row.prev, row.next};
        out += compose(c, style) + "\n";
    }
    if (out_path.empty())
        std::cout << out;
    else
        write_text_file(out_path, out);
    return 0;
}

int cmd_split(const std::string& manifest_path, const PipelineConfig& cfg,
              ManifestMode mode, const std::string& out_dir,
              std::size_t sample_n) {
    std::vector<ClipRecord> records = read_manifest_file(manifest_path);
    if (sample_n > 0)
        records = stratified_sample(records, sample_n, cfg.split_spec.seed);
    SplitResult parts = split(records, cfg.split_spec);
    fs::create_directories(out_dir);
    write_manifest_file(parts.train, out_dir + "/train.json", mode);
    write_manifest_file(parts.val, out_dir + "/val.json", mode);
    write_manifest_file(parts.test, out_dir + "/test.json", mode);
    ordered_json report{{"total", records.size()},
                        {"train", parts.train.size()},
                        {"val", parts.val.size()},
                        {"test", parts.test.size()},
                        {"seed", cfg.split_spec.seed}};
    std::cout << report.dump() << "\n";
    return 0;
}

int cmd_evaluate(const std::string& grouping_path, const PipelineConfig& cfg,
                 ReportFormat format, const std::string& out_path) {
    std::vector<EvalInput> inputs = load_grouping(grouping_path);
    if (inputs.empty()) {
        std::cerr << "tavkit evaluate: grouping file is empty\n";
        return 1;
    }
    SourceOpener opener = [&](const std::string& path) {
        return open_video(path, cfg);
    };
    EvalSummary summary = evaluate_group(inputs, cfg.detector, opener, cfg.workers);
    for (const EvalFailure& f : summary.failed)
        std::cerr << "tavkit evaluate: " << f.video_path << ": " << f.error << "\n";
    if (out_path.empty()) {
        emit_report(summary.reports, format, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw IoError("cannot open file for writing: " + out_path);
        emit_report(summary.reports, format, out);
    }
    return exit_code(summary.failed.size(), inputs.size());
}

// ------------------------------------------------------------ configuration

// --config is resolved before CLI11 runs so file values can seed the flag
// defaults; explicit flags then override them.
std::string prescan_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0)
            return arg.substr(9);
    }
    return {};
}

PipelineConfig pipeline_from(const Config& c) {
    PipelineConfig p;
    p.decoder_command = c.get("decoder.command", p.decoder_command);
    if (const char* env = std::getenv("TAVKIT_DECODER"); env && *env)
        p.decoder_command = env;
    p.workers =
        static_cast<unsigned>(c.get_long("workers", static_cast<long>(p.workers)));
    p.detector.weight_h = c.get_double("scene.weights.h", p.detector.weight_h);
    p.detector.weight_s = c.get_double("scene.weights.s", p.detector.weight_s);
    p.detector.weight_v = c.get_double("scene.weights.v", p.detector.weight_v);
    p.detector.threshold = c.get_double("scene.threshold", p.detector.threshold);
    p.detector.min_scene_len_frames = static_cast<int>(
        c.get_long("scene.min_len_frames", p.detector.min_scene_len_frames));
    p.detector.downscale_factor = static_cast<int>(
        c.get_long("scene.downscale", p.detector.downscale_factor));
    p.extraction.padding_seconds =
        c.get_double("extract.padding", p.extraction.padding_seconds);
    p.extraction.max_clip_seconds =
        c.get_double("extract.max_clip", p.extraction.max_clip_seconds);
    if (c.get("extract.selection", "first_only") == "all")
        p.extraction.cut_selection = CutSelection::all;
    p.cut_command = c.get("extract.command", p.cut_command);
    p.output_dir = c.get("extract.output_dir", p.output_dir);
    p.validation.diff_threshold =
        c.get_double("validate.threshold", p.validation.diff_threshold);
    p.validation.early_exit =
        c.get_bool("validate.early_exit", p.validation.early_exit);
    p.split_spec.train = c.get_double("split.train", p.split_spec.train);
    p.split_spec.val = c.get_double("split.val", p.split_spec.val);
    p.split_spec.test = c.get_double("split.test", p.split_spec.test);
    p.split_spec.seed = static_cast<std::uint64_t>(c.get_long("split.seed", 0));
    p.style = parse_style(c.get("prompt.style", "explicit"));
    return p;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tavkit - scene-transition dataset toolkit"};
    app.require_subcommand(1);

    Config file_cfg;
    PipelineConfig cfg;
    try {
        std::string config_path = prescan_config_path(argc, argv);
        if (!config_path.empty())
            file_cfg = Config::load_file(config_path);
        cfg = pipeline_from(file_cfg);
    } catch (const std::exception& e) {
        std::cerr << "tavkit: " << e.what() << "\n";
        return 1;
    }

    std::string config_path_opt; // consumed by the prescan; declared for help
    app.add_option("--config", config_path_opt, "flat key=value config file");
    app.add_option("--workers", cfg.workers, "worker threads for corpus jobs");
    long seed_flag = -1;
    app.add_option("--seed", seed_flag, "seed for split and sampling");
    app.add_flag("--trace", cfg.trace, "record per-frame score traces");

    std::string fps_text;
    double threshold = cfg.detector.threshold;
    std::string weights_text;
    int min_scene_len = cfg.detector.min_scene_len_frames;
    double min_scene_seconds = -1;
    int downscale_flag = cfg.detector.downscale_factor;

    auto add_detector_flags = [&](CLI::App* sub) {
        sub->add_option("--fps", fps_text, "fps for raw image sequences (N or N:D)");
        sub->add_option("--threshold", threshold, "cut threshold on the change score");
        sub->add_option("--weights", weights_text, "channel weights h,s,v");
        sub->add_option("--min-scene-len", min_scene_len,
                        "minimum frames between cuts");
        sub->add_option("--min-scene-seconds", min_scene_seconds,
                        "minimum seconds between cuts (converted per stream)");
        sub->add_option("--downscale", downscale_flag,
                        "downscale factor before detection (0 = auto)");
    };

    // detect
    auto* detect = app.add_subcommand("detect", "detect scene cuts per video")->fallthrough();
    std::vector<std::string> detect_inputs;
    detect->add_option("inputs", detect_inputs, "video files, Y4M files or PPM dirs")
        ->required();
    std::string trace_dir;
    detect->add_option("--trace-dir", trace_dir, "write per-frame CSV traces here");
    add_detector_flags(detect);

    // build
    auto* build = app.add_subcommand("build", "corpus manifest -> dataset manifest")->fallthrough();
    std::string corpus_path;
    build->add_option("corpus", corpus_path, "corpus manifest (JSON)")->required();
    std::string out_dir_flag;
    build->add_option("--out-dir", out_dir_flag, "output directory for clips");
    std::string style_text;
    build->add_option("--style", style_text, "prompt style: single|implicit|explicit");
    std::string mode_text = "minimal";
    build->add_option("--mode", mode_text, "manifest mode: minimal|full");
    bool all_cuts = false;
    build->add_flag("--all-cuts", all_cuts, "extract every cut, not only the first");
    bool execute = false;
    build->add_flag("--execute", execute, "actually run the cutter commands");
    std::string manifest_flag;
    build->add_option("--manifest", manifest_flag, "manifest output path");
    std::string commands_flag;
    build->add_option("--commands", commands_flag,
                      "write rendered cutter commands here");
    add_detector_flags(build);

    // extract
    auto* extract = app.add_subcommand("extract", "render transition clip windows")->fallthrough();
    std::vector<std::string> extract_inputs;
    extract->add_option("inputs", extract_inputs, "video inputs")->required();
    extract->add_option("--out-dir", out_dir_flag, "output directory for clips");
    extract->add_flag("--all-cuts", all_cuts, "extract every cut, not only the first");
    extract->add_flag("--execute", execute, "actually run the cutter commands");
    add_detector_flags(extract);

    // validate
    auto* validate = app.add_subcommand("validate", "check clips for a transition")->fallthrough();
    std::vector<std::string> validate_inputs;
    validate->add_option("inputs", validate_inputs, "clip inputs")->required();
    double validate_threshold = cfg.validation.diff_threshold;
    validate->add_option("--threshold", validate_threshold,
                         "mean-absolute-difference threshold");
    bool no_early_exit = false;
    validate->add_flag("--no-early-exit", no_early_exit, "always scan every frame");
    validate->add_option("--fps", fps_text, "fps for raw image sequences");

    // compose
    auto* compose_cmd = app.add_subcommand("compose", "captions -> prompts")->fallthrough();
    std::string captions_path, prev_text, next_text, compose_out;
    compose_cmd->add_option("--captions", captions_path,
                            "caption table (TSV or JSON)");
    compose_cmd->add_option("--prev", prev_text, "previous-scene caption");
    compose_cmd->add_option("--next", next_text, "next-scene caption");
    compose_cmd->add_option("--style", style_text,
                            "prompt style: single|implicit|explicit");
    compose_cmd->add_option("-o,--output", compose_out, "output file");

    // split
    auto* split_cmd = app.add_subcommand("split", "manifest -> train/val/test")->fallthrough();
    std::string split_manifest;
    split_cmd->add_option("manifest", split_manifest, "dataset manifest")->required();
    std::string split_out_dir = ".";
    split_cmd->add_option("--out-dir", split_out_dir, "output directory");
    std::string ratios_text;
    split_cmd->add_option("--ratios", ratios_text, "train,val,test ratios");
    split_cmd->add_option("--mode", mode_text, "manifest mode: minimal|full");
    std::size_t sample_n = 0;
    split_cmd->add_option("--sample", sample_n,
                          "stratified-sample this many records first");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "segment counts per group")->fallthrough();
    std::string grouping_path;
    evaluate->add_option("grouping", grouping_path, "grouping file (TSV or JSON)")
        ->required();
    std::string format_text = "csv";
    evaluate->add_option("--format", format_text, "report format: csv|json");
    std::string eval_out;
    evaluate->add_option("-o,--output", eval_out, "report output file");
    add_detector_flags(evaluate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        // fold flag values back into the pipeline config
        cfg.detector.threshold = threshold;
        cfg.detector.min_scene_len_frames = min_scene_len;
        cfg.detector.downscale_factor = downscale_flag;
        if (min_scene_seconds >= 0)
            cfg.min_scene_seconds = min_scene_seconds;
        if (!weights_text.empty()) {
            double w[3];
            std::size_t pos = 0;
            for (int i = 0; i < 3; ++i) {
                std::size_t comma = weights_text.find(',', pos);
                if ((comma == std::string::npos) != (i == 2))
                    throw ArgumentError("--weights needs h,s,v");
                w[i] = std::stod(weights_text.substr(pos, comma - pos));
                pos = comma + 1;
            }
            cfg.detector.weight_h = w[0];
            cfg.detector.weight_s = w[1];
            cfg.detector.weight_v = w[2];
        }
        if (!fps_text.empty())
            cfg.fps = parse_fps(fps_text);
        if (!style_text.empty())
            cfg.style = parse_style(style_text);
        if (!out_dir_flag.empty())
            cfg.output_dir = out_dir_flag;
        if (all_cuts)
            cfg.extraction.cut_selection = CutSelection::all;
        if (seed_flag >= 0)
            cfg.split_spec.seed = static_cast<std::uint64_t>(seed_flag);
        if (!ratios_text.empty()) {
            double r[3];
            std::size_t pos = 0;
            for (int i = 0; i < 3; ++i) {
                std::size_t comma = ratios_text.find(',', pos);
                if ((comma == std::string::npos) != (i == 2))
                    throw ArgumentError("--ratios needs train,val,test");
                r[i] = std::stod(ratios_text.substr(pos, comma - pos));
                pos = comma + 1;
            }
            cfg.split_spec.train = r[0];
            cfg.split_spec.val = r[1];
            cfg.split_spec.test = r[2];
        }
        if (cfg.workers < 1)
            cfg.workers = 1;
        cfg.detector.validate();
        cfg.extraction.validate();

        if (mode_text != "full" && mode_text != "minimal")
            throw ArgumentError("--mode must be minimal or full");
        ManifestMode mode =
            mode_text == "full" ? ManifestMode::full : ManifestMode::minimal;

        if (app.got_subcommand(detect))
            return cmd_detect(detect_inputs, cfg, trace_dir);
        if (app.got_subcommand(build))
            return cmd_build(corpus_path, cfg, execute, mode, manifest_flag,
                             commands_flag);
        if (app.got_subcommand(extract))
            return cmd_extract(extract_inputs, cfg, execute);
        if (app.got_subcommand(validate)) {
            cfg.validation.diff_threshold = validate_threshold;
            if (no_early_exit)
                cfg.validation.early_exit = false;
            return cmd_validate(validate_inputs, cfg);
        }
        if (app.got_subcommand(compose_cmd))
            return cmd_compose(captions_path, prev_text, next_text, cfg.style,
                               compose_out);
        if (app.got_subcommand(split_cmd))
            return cmd_split(split_manifest, cfg, mode, split_out_dir, sample_n);
        if (app.got_subcommand(evaluate)) {
            if (format_text != "json" && format_text != "csv")
                throw ArgumentError("--format must be csv or json");
            ReportFormat format =
                format_text == "json" ? ReportFormat::json : ReportFormat::csv;
            return cmd_evaluate(grouping_path, cfg, format, eval_out);
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "tavkit: " << e.what() << "\n";
        return 1;
    }
}
