#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tavkit/errors.hpp"

namespace tavkit {

enum class Chroma { C420, C422, C444 };

struct Rational {
    int num = 0;
    int den = 1;

    double as_double() const { return static_cast<double>(num) / den; }
    bool operator==(const Rational&) const = default;
};

// Geometry and timing of a frame stream. Interlaced input is rejected at
// parse time, so everything downstream can assume progressive frames.
struct StreamInfo {
    int width = 0;
    int height = 0;
    Rational fps{};
    Chroma chroma = Chroma::C420;

    double frame_duration() const {
        return static_cast<double>(fps.den) / static_cast<double>(fps.num);
    }

    // Throws FormatError on nonpositive dimensions or fps, or on chroma
    // subsampling that the dimensions cannot carry.
    void validate() const;
};

// Decoded frame: interleaved 8-bit RGB, exactly width*height*3 bytes.
struct RawFrame {
    int width = 0;
    int height = 0;
    long index = 0;
    double pts_seconds = 0.0;
    std::vector<std::uint8_t> rgb;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
};

// Planar HSV frame. Hue uses the half-degree 8-bit convention,
// h = round(H_degrees / 2), so a full circle maps to [0,179] and all three
// planes share one byte scale.
struct HsvFrame {
    int width = 0;
    int height = 0;
    long index = 0;
    double pts_seconds = 0.0;
    std::vector<std::uint8_t> h;
    std::vector<std::uint8_t> s;
    std::vector<std::uint8_t> v;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
};

// Strictly sequential single-consumer frame iterator. Safe to move between
// threads, not to share.
class FrameSource {
public:
    virtual ~FrameSource() = default;
    virtual const StreamInfo& info() const = 0;
    // Next frame in stream order, or nullopt at end of stream.
    virtual std::optional<RawFrame> next() = 0;
};

// In-memory source. Frame index and pts are renumbered from the stream info
// so the usual pts arithmetic holds regardless of how the frames were built.
class VectorSource final : public FrameSource {
public:
    VectorSource(StreamInfo info, std::vector<RawFrame> frames);

    const StreamInfo& info() const override { return info_; }
    std::optional<RawFrame> next() override;

private:
    StreamInfo info_;
    std::vector<RawFrame> frames_;
    std::size_t pos_ = 0;
};

} // namespace tavkit
