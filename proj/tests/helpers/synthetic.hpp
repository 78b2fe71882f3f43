#pragma once

// Synthetic video fixtures shared by the unit and acceptance suites.

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tavkit/bytes.hpp"
#include "tavkit/frame.hpp"
#include "tavkit/y4m.hpp"

namespace synth {

using Rgb = std::array<std::uint8_t, 3>;

// Solid colors whose pairwise hue separation (stored units) is at least 60
// and whose weighted HSV delta clears the default detection threshold with
// margin, even after a YCbCr round trip.
inline constexpr Rgb kPalette[3] = {
    {255, 0, 0},  // hsv (0, 255, 255)
    {0, 200, 67}, // hsv (70, 255, 200)
    {170, 0, 255} // hsv (140, 255, 255)
};

inline tavkit::RawFrame solid_frame(int w, int h, Rgb color) {
    tavkit::RawFrame f;
    f.width = w;
    f.height = h;
    f.rgb.resize(static_cast<std::size_t>(w) * h * 3);
    for (std::size_t i = 0; i < f.rgb.size(); i += 3) {
        f.rgb[i] = color[0];
        f.rgb[i + 1] = color[1];
        f.rgb[i + 2] = color[2];
    }
    return f;
}

struct Scene {
    Rgb color;
    int frames;
};

inline std::vector<tavkit::RawFrame> scene_frames(int w, int h,
                                                  const std::vector<Scene>& scenes) {
    std::vector<tavkit::RawFrame> out;
    for (const Scene& s : scenes)
        for (int i = 0; i < s.frames; ++i)
            out.push_back(solid_frame(w, h, s.color));
    return out;
}

// Frame indices of the first frame of every scene after the first: the
// ground-truth cut positions.
inline std::vector<long> scene_boundaries(const std::vector<Scene>& scenes) {
    std::vector<long> out;
    long pos = 0;
    for (std::size_t i = 0; i + 1 < scenes.size(); ++i) {
        pos += scenes[i].frames;
        out.push_back(pos);
    }
    return out;
}

inline std::string encode_y4m(const tavkit::StreamInfo& info,
                              const std::vector<tavkit::RawFrame>& frames) {
    std::ostringstream os(std::ios::binary);
    tavkit::Y4mWriter writer(os, info);
    for (const tavkit::RawFrame& f : frames)
        writer.write_frame(f);
    return os.str();
}

inline std::string scene_y4m(int w, int h, tavkit::Rational fps,
                             const std::vector<Scene>& scenes,
                             tavkit::Chroma chroma = tavkit::Chroma::C444) {
    tavkit::StreamInfo info;
    info.width = w;
    info.height = h;
    info.fps = fps;
    info.chroma = chroma;
    return encode_y4m(info, scene_frames(w, h, scenes));
}

inline std::unique_ptr<tavkit::FrameSource> open_mem_y4m(const std::string& bytes) {
    return tavkit::open_y4m(std::make_unique<tavkit::io::MemoryReader>(bytes));
}

// Random multi-scene fixture: `n_scenes` solid scenes drawn from the palette
// with consecutive colors distinct, each lasting [min_frames, max_frames].
struct RandomVideo {
    std::vector<Scene> scenes;
    std::vector<long> boundaries;
    std::string y4m;
};

inline RandomVideo random_scene_video(std::mt19937_64& rng, int w, int h,
                                      tavkit::Rational fps, int min_scenes,
                                      int max_scenes, int min_frames,
                                      int max_frames) {
    const int n_scenes =
        min_scenes + static_cast<int>(rng() % (max_scenes - min_scenes + 1));
    RandomVideo out;
    std::size_t prev_color = 3;
    for (int i = 0; i < n_scenes; ++i) {
        std::size_t color;
        do {
            color = rng() % 3;
        } while (color == prev_color);
        prev_color = color;
        int frames =
            min_frames + static_cast<int>(rng() % (max_frames - min_frames + 1));
        out.scenes.push_back({kPalette[color], frames});
    }
    out.boundaries = scene_boundaries(out.scenes);
    out.y4m = scene_y4m(w, h, fps, out.scenes);
    return out;
}

} // namespace synth
