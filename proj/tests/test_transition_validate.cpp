#include <doctest.h>

#include <cmath>
#include <random>

#include "tavkit/transition_validate.hpp"

#include "helpers/synthetic.hpp"

using namespace tavkit;

namespace {

StreamInfo info_for(int w, int h) {
    StreamInfo info;
    info.width = w;
    info.height = h;
    info.fps = {30, 1};
    info.chroma = Chroma::C444;
    return info;
}

// Brute-force mean over all samples of all consecutive pairs.
double max_diff_oracle(const std::vector<RawFrame>& frames) {
    double best = 0.0;
    for (std::size_t f = 1; f < frames.size(); ++f) {
        double sum = 0.0;
        for (std::size_t i = 0; i < frames[f].rgb.size(); ++i)
            sum += std::abs(static_cast<double>(frames[f - 1].rgb[i]) -
                            static_cast<double>(frames[f].rgb[i]));
        best = std::max(best, sum / static_cast<double>(frames[f].rgb.size()));
    }
    return best;
}

} // namespace

TEST_CASE("constant clip never validates") {
    std::vector<RawFrame> frames(5, synth::solid_frame(8, 8, {40, 50, 60}));
    VectorSource src(info_for(8, 8), std::move(frames));
    ValidationResult res = validate_clip(src);
    CHECK_FALSE(res.detected);
    CHECK(res.max_diff == 0.0);
    CHECK(res.argmax_frame.has_value());
}

TEST_CASE("black-to-white flip validates with diff 255") {
    std::vector<RawFrame> frames{synth::solid_frame(8, 8, {0, 0, 0}),
                                 synth::solid_frame(8, 8, {255, 255, 255})};
    VectorSource src(info_for(8, 8), std::move(frames));
    ValidationResult res = validate_clip(src);
    CHECK(res.detected);
    CHECK(res.max_diff == 255.0);
    REQUIRE(res.argmax_frame.has_value());
    CHECK(*res.argmax_frame == 1);
}

TEST_CASE("uniform +10 shift stays below the default threshold") {
    std::vector<RawFrame> frames{synth::solid_frame(8, 8, {100, 100, 100}),
                                 synth::solid_frame(8, 8, {110, 110, 110})};
    VectorSource src(info_for(8, 8), std::move(frames));
    ValidationResult res = validate_clip(src);
    CHECK_FALSE(res.detected);
    CHECK(res.max_diff == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("strict comparison at the threshold boundary") {
    std::vector<RawFrame> frames{synth::solid_frame(4, 4, {0, 0, 0}),
                                 synth::solid_frame(4, 4, {50, 50, 50})};
    VectorSource src(info_for(4, 4), std::move(frames));
    ValidationResult res = validate_clip(src); // diff exactly 50, not > 50
    CHECK_FALSE(res.detected);
    CHECK(res.max_diff == 50.0);
}

TEST_CASE("single frame and empty clips have no argmax") {
    VectorSource empty(info_for(4, 4), {});
    ValidationResult r0 = validate_clip(empty);
    CHECK_FALSE(r0.detected);
    CHECK_FALSE(r0.argmax_frame.has_value());

    std::vector<RawFrame> one{synth::solid_frame(4, 4, {1, 2, 3})};
    VectorSource single(info_for(4, 4), std::move(one));
    ValidationResult r1 = validate_clip(single);
    CHECK_FALSE(r1.detected);
    CHECK_FALSE(r1.argmax_frame.has_value());
}

TEST_CASE("early exit reports the first exceeding pair") {
    std::vector<RawFrame> frames{
        synth::solid_frame(4, 4, {0, 0, 0}),
        synth::solid_frame(4, 4, {80, 80, 80}),   // first exceedance
        synth::solid_frame(4, 4, {255, 255, 255}) // larger, but never reached
    };
    VectorSource src(info_for(4, 4), std::move(frames));
    ValidationResult res = validate_clip(src);
    CHECK(res.detected);
    CHECK(res.max_diff == doctest::Approx(80.0));
    CHECK(*res.argmax_frame == 1);
}

TEST_CASE("full scan matches the brute-force oracle on random clips") {
    std::mt19937_64 rng(23);
    ValidationConfig cfg;
    cfg.early_exit = false;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        std::vector<RawFrame> frames;
        for (int f = 0; f < n; ++f) {
            RawFrame frame;
            frame.width = 6;
            frame.height = 4;
            frame.rgb.resize(frame.pixel_count() * 3);
            for (auto& b : frame.rgb)
                b = static_cast<std::uint8_t>(rng() % 256);
            frames.push_back(std::move(frame));
        }
        double expect = max_diff_oracle(frames);
        VectorSource src(info_for(6, 4), std::move(frames));
        ValidationResult res = validate_clip(src, cfg);
        CHECK(std::abs(res.max_diff - expect) <= 1e-9);
        CHECK(res.detected == (expect > cfg.diff_threshold));
    }
}

namespace {

// Delivers at most `chunk` bytes per read, to model pipe-style short reads.
class ChunkedReader final : public tavkit::io::ByteReader {
public:
    ChunkedReader(std::string data, std::size_t chunk)
        : data_(std::move(data)), chunk_(chunk) {}

    std::size_t read(std::uint8_t* dst, std::size_t n) override {
        std::size_t avail = data_.size() - pos_;
        std::size_t take = std::min({n, avail, chunk_});
        std::copy_n(data_.data() + pos_, take, reinterpret_cast<char*>(dst));
        pos_ += take;
        return take;
    }

private:
    std::string data_;
    std::size_t pos_ = 0;
    std::size_t chunk_;
};

} // namespace

TEST_CASE("result is invariant under re-chunking of the byte stream") {
    std::mt19937_64 rng(41);
    synth::RandomVideo v = synth::random_scene_video(rng, 8, 8, {30, 1}, 2, 3, 3, 6);
    ValidationConfig cfg;
    cfg.early_exit = false;

    auto whole = tavkit::open_y4m(std::make_unique<tavkit::io::MemoryReader>(v.y4m));
    ValidationResult base = validate_clip(*whole, cfg);
    for (std::size_t chunk : {1ul, 7ul, 64ul, 1000ul}) {
        auto src = tavkit::open_y4m(
            std::make_unique<ChunkedReader>(v.y4m, chunk));
        ValidationResult res = validate_clip(*src, cfg);
        CHECK(res.detected == base.detected);
        CHECK(res.max_diff == base.max_diff);
        CHECK(res.argmax_frame == base.argmax_frame);
    }
}

TEST_CASE("early exit does not change the detected flag") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        synth::RandomVideo v =
            synth::random_scene_video(rng, 8, 8, {30, 1}, 2, 4, 2, 6);
        ValidationConfig eager, full;
        full.early_exit = false;
        auto a = synth::open_mem_y4m(v.y4m);
        auto b = synth::open_mem_y4m(v.y4m);
        CHECK(validate_clip(*a, eager).detected == validate_clip(*b, full).detected);
    }
}
