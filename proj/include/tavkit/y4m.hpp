#pragma once

#include <memory>
#include <ostream>
#include <string>

#include "tavkit/bytes.hpp"
#include "tavkit/frame.hpp"

namespace tavkit {

struct Y4mOptions {
    // Decoder pipes are limited-range BT.601 by default. Set when the
    // producer is known to emit full-range samples (JFIF-style).
    bool full_range = false;
};

// Opens a YUV4MPEG2 byte stream and yields RGB frames. The header must carry
// W, H and F tags; C defaults to 420 and unknown tags are ignored.
// Interlaced streams are rejected.
std::unique_ptr<FrameSource> open_y4m(std::unique_ptr<io::ByteReader> in,
                                      Y4mOptions opts = {});

// "YUV4MPEG2 W<w> H<h> F<num>:<den> Ip C<chroma>\n"
std::string serialize_y4m_header(const StreamInfo& info);

// Emits a Y4M stream from RGB frames using the inverse of the read-side
// BT.601 limited-range conversion. 4:2:0 and 4:2:2 chroma is box-averaged.
class Y4mWriter {
public:
    Y4mWriter(std::ostream& out, StreamInfo info);
    void write_frame(const RawFrame& frame);

private:
    std::ostream& out_;
    StreamInfo info_;
};

} // namespace tavkit
