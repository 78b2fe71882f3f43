#include "tavkit/frame.hpp"

#include <string>

namespace tavkit {

void StreamInfo::validate() const {
    if (width < 1 || height < 1)
        throw FormatError("invalid frame size " + std::to_string(width) + "x" +
                          std::to_string(height));
    if (fps.num < 1 || fps.den < 1)
        throw FormatError("invalid frame rate " + std::to_string(fps.num) + ":" +
                          std::to_string(fps.den));
    if (chroma == Chroma::C420 && (width % 2 != 0 || height % 2 != 0))
        throw FormatError("4:2:0 requires even dimensions, got " +
                          std::to_string(width) + "x" + std::to_string(height));
    if (chroma == Chroma::C422 && width % 2 != 0)
        throw FormatError("4:2:2 requires even width, got " + std::to_string(width));
}

VectorSource::VectorSource(StreamInfo info, std::vector<RawFrame> frames)
    : info_(info), frames_(std::move(frames)) {
    long i = 0;
    for (RawFrame& f : frames_) {
        f.index = i;
        f.pts_seconds = i * info_.frame_duration();
        ++i;
    }
}

std::optional<RawFrame> VectorSource::next() {
    if (pos_ >= frames_.size())
        return std::nullopt;
    return std::move(frames_[pos_++]);
}

} // namespace tavkit
