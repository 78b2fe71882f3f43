#include <doctest.h>

#include <random>

#include "tavkit/clip_extract.hpp"

using namespace tavkit;

TEST_CASE("select_transitions keeps the first cut by default") {
    CutList cuts;
    cuts.cuts = {{216, 7.2}, {570, 19.0}, {1335, 44.5}};

    ExtractionConfig first;
    CHECK(select_transitions(cuts, first) == std::vector<double>{7.2});

    ExtractionConfig all;
    all.cut_selection = CutSelection::all;
    CutList two;
    two.cuts = {{216, 7.2}, {570, 19.0}};
    CHECK(select_transitions(two, all) == std::vector<double>{7.2, 19.0});

    CutList empty;
    CHECK(select_transitions(empty, first).empty());
    CHECK(select_transitions(empty, all).empty());
}

TEST_CASE("clip_bounds handles the unclamped and clamped cases") {
    ExtractionConfig cfg;
    auto [s1, e1] = clip_bounds(7.2, 30.0, cfg);
    CHECK(s1 == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(e1 == doctest::Approx(12.2).epsilon(1e-12));

    auto [s2, e2] = clip_bounds(3.0, 30.0, cfg);
    CHECK(s2 == 0.0);
    CHECK(e2 == doctest::Approx(8.0).epsilon(1e-12));

    auto [s3, e3] = clip_bounds(58.0, 60.0, cfg);
    CHECK(s3 == doctest::Approx(53.0).epsilon(1e-12));
    CHECK(e3 == 60.0);

    CHECK_THROWS_AS(clip_bounds(-0.1, 30.0, cfg), ArgumentError);
    CHECK_THROWS_AS(clip_bounds(31.0, 30.0, cfg), ArgumentError);
}

TEST_CASE("clip_bounds properties: monotone, capped, clamped") {
    std::mt19937_64 rng(17);
    ExtractionConfig cfg;
    for (int trial = 0; trial < 200; ++trial) {
        double duration = 1.0 + (rng() % 10000) / 100.0;
        double t1 = (rng() % 10000) / 10000.0 * duration;
        double t2 = (rng() % 10000) / 10000.0 * duration;
        if (t1 > t2)
            std::swap(t1, t2);
        auto [s1, e1] = clip_bounds(t1, duration, cfg);
        auto [s2, e2] = clip_bounds(t2, duration, cfg);
        CHECK(s1 <= s2);
        CHECK(e1 <= e2);
        CHECK(s1 >= 0.0);
        CHECK(e1 <= duration);
        CHECK(e1 - s1 <= cfg.max_clip_seconds + 1e-9);
        // interior transitions give a symmetric full-width window
        if (t1 >= cfg.padding_seconds && t1 <= duration - cfg.padding_seconds) {
            CHECK(e1 - s1 == doctest::Approx(2 * cfg.padding_seconds).epsilon(1e-9));
            CHECK((s1 + e1) / 2 == doctest::Approx(t1).epsilon(1e-9));
        }
    }
}

TEST_CASE("truncation to max_clip_seconds") {
    ExtractionConfig cfg;
    cfg.padding_seconds = 8.0;
    cfg.max_clip_seconds = 10.0;
    auto [s, e] = clip_bounds(20.0, 100.0, cfg);
    CHECK(s == doctest::Approx(12.0));
    CHECK(e == doctest::Approx(22.0)); // 28 truncated to start + 10
}

TEST_CASE("make_clip_spec flags degenerate truncations") {
    ExtractionConfig odd;
    odd.padding_seconds = 8.0;
    odd.max_clip_seconds = 5.0; // clip can end before the transition
    ClipSpec bad = make_clip_spec("/data/v.mp4", 20.0, 100.0, odd);
    CHECK(bad.degenerate);

    ClipSpec good = make_clip_spec("/data/v.mp4", 7.2, 30.0, ExtractionConfig{});
    CHECK_FALSE(good.degenerate);
    CHECK(good.video_name == "v");
    CHECK(good.start_time <= good.transition_time);
    CHECK(good.transition_time <= good.end_time);
    CHECK(good.duration() == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("video_basename cuts at the first dot, like the reference tooling") {
    CHECK(video_basename("/videos/example.mp4") == "example");
    CHECK(video_basename("example.mp4") == "example");
    CHECK(video_basename("dir/a.b.mp4") == "a");
    CHECK(video_basename("noext") == "noext");
}

TEST_CASE("clip output name truncates to integer seconds") {
    ClipSpec spec;
    spec.video_name = "example";
    spec.start_time = 2.2;
    spec.end_time = 12.2;
    CHECK(clip_output_name(spec) == "example_2-12.mp4");

    spec.video_name = "clip";
    spec.start_time = 0.0;
    spec.end_time = 8.0;
    CHECK(clip_output_name(spec) == "clip_0-8.mp4");
}

TEST_CASE("render_cut_command substitutes all placeholders") {
    ClipSpec spec;
    spec.source_path = "/in/example.mp4";
    spec.video_name = "example";
    spec.start_time = 2.2;
    spec.end_time = 12.2;
    spec.transition_time = 7.2;

    RenderedCommand cmd =
        render_cut_command(spec, kDefaultCutTemplate, "/out");
    CHECK(cmd.output_path == "/out/example_2-12.mp4");
    CHECK(cmd.command.find("-ss 2.2 ") != std::string::npos);
    CHECK(cmd.command.find("-to 12.2 ") != std::string::npos);
    CHECK(cmd.command.find("-i /in/example.mp4") != std::string::npos);
    CHECK(cmd.command.find("/out/example_2-12.mp4") != std::string::npos);
    CHECK(cmd.command.find("{") == std::string::npos);

    try {
        render_cut_command(spec, "cut {input} {start} {end}", "/out");
        FAIL("expected TemplateError");
    } catch (const TemplateError& e) {
        CHECK(e.placeholder() == "{output}");
    }
}

TEST_CASE("extraction config validation") {
    ExtractionConfig bad;
    bad.padding_seconds = -1;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    ExtractionConfig zero;
    zero.max_clip_seconds = 0;
    CHECK_THROWS_AS(zero.validate(), ArgumentError);
}
