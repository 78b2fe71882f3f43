#include "tavkit/y4m.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <utility>
#include <vector>

namespace tavkit {
namespace {

constexpr std::size_t kMaxLineLength = 4096;

int clamp_byte(int v) {
    return v < 0 ? 0 : (v > 255 ? 255 : v);
}

// Reads one LF-terminated line, without the terminator. Returns false when
// the stream ends before the first byte.
bool read_line(io::ByteReader& in, std::string& line) {
    line.clear();
    std::uint8_t c;
    while (true) {
        if (in.read(&c, 1) == 0)
            return !line.empty();
        if (c == '\n')
            return true;
        line.push_back(static_cast<char>(c));
        if (line.size() > kMaxLineLength)
            throw FormatError("Y4M header line exceeds " +
                              std::to_string(kMaxLineLength) + " bytes");
    }
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok)
        out.push_back(tok);
    return out;
}

int parse_positive_int(const std::string& tok, const char* what) {
    const std::string digits = tok.substr(1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError(std::string("bad Y4M ") + what + " tag \"" + tok + "\"");
    long v = std::stol(digits);
    if (v < 1 || v > 1 << 24)
        throw FormatError(std::string("bad Y4M ") + what + " tag \"" + tok + "\"");
    return static_cast<int>(v);
}

StreamInfo parse_header(const std::string& line) {
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty() || toks[0] != "YUV4MPEG2")
        throw FormatError("not a YUV4MPEG2 stream (signature \"" +
                          (toks.empty() ? std::string() : toks[0]) + "\")");

    StreamInfo info;
    bool have_w = false, have_h = false, have_f = false;
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        switch (t[0]) {
        case 'W':
            info.width = parse_positive_int(t, "width");
            have_w = true;
            break;
        case 'H':
            info.height = parse_positive_int(t, "height");
            have_h = true;
            break;
        case 'F': {
            std::size_t colon = t.find(':');
            if (colon == std::string::npos || colon < 2 || colon + 1 >= t.size())
                throw FormatError("bad Y4M frame-rate tag \"" + t + "\"");
            info.fps.num = parse_positive_int(t.substr(0, colon), "frame-rate");
            info.fps.den = parse_positive_int("F" + t.substr(colon + 1), "frame-rate");
            have_f = true;
            break;
        }
        case 'I':
            if (t == "Ip")
                break;
            if (t == "It" || t == "Ib" || t == "Im")
                throw UnsupportedFormatError("interlaced stream (tag \"" + t + "\")");
            throw FormatError("bad Y4M interlacing tag \"" + t + "\"");
        case 'C':
            if (t == "C420" || t == "C420jpeg" || t == "C420paldv" || t == "C420mpeg2")
                info.chroma = Chroma::C420;
            else if (t == "C422")
                info.chroma = Chroma::C422;
            else if (t == "C444")
                info.chroma = Chroma::C444;
            else
                throw UnsupportedFormatError("unsupported Y4M chroma tag \"" + t + "\"");
            break;
        default:
            break; // A, X and anything else: ignored
        }
    }
    if (!have_w)
        throw FormatError("Y4M header missing W tag");
    if (!have_h)
        throw FormatError("Y4M header missing H tag");
    if (!have_f)
        throw FormatError("Y4M header missing F tag");
    info.validate();
    return info;
}

struct PlaneLayout {
    int chroma_w;
    int chroma_h;
};

PlaneLayout chroma_layout(const StreamInfo& info) {
    switch (info.chroma) {
    case Chroma::C420: return {info.width / 2, info.height / 2};
    case Chroma::C422: return {info.width / 2, info.height};
    case Chroma::C444: return {info.width, info.height};
    }
    return {info.width, info.height};
}

class Y4mSource final : public FrameSource {
public:
    Y4mSource(std::unique_ptr<io::ByteReader> in, Y4mOptions opts)
        : in_(std::move(in)), opts_(opts) {
        std::string line;
        if (!read_line(*in_, line))
            throw FormatError("empty Y4M stream");
        info_ = parse_header(line);
        PlaneLayout cl = chroma_layout(info_);
        chroma_w_ = cl.chroma_w;
        chroma_h_ = cl.chroma_h;
        y_.resize(static_cast<std::size_t>(info_.width) * info_.height);
        cb_.resize(static_cast<std::size_t>(chroma_w_) * chroma_h_);
        cr_.resize(cb_.size());
    }

    const StreamInfo& info() const override { return info_; }

    std::optional<RawFrame> next() override {
        std::uint8_t first;
        if (in_->read(&first, 1) == 0)
            return std::nullopt; // clean end of stream
        std::string marker(1, static_cast<char>(first));
        std::uint8_t c;
        while (true) {
            if (in_->read(&c, 1) == 0)
                throw CorruptStreamError("Y4M stream ends inside frame marker",
                                         next_index_);
            if (c == '\n')
                break;
            marker.push_back(static_cast<char>(c));
            if (marker.size() > kMaxLineLength)
                throw CorruptStreamError("Y4M frame marker too long", next_index_);
        }
        if (marker.compare(0, 5, "FRAME") != 0)
            throw CorruptStreamError("expected FRAME marker, got \"" +
                                     marker.substr(0, 16) + "\"", next_index_);

        read_plane(y_);
        read_plane(cb_);
        read_plane(cr_);

        RawFrame f;
        f.width = info_.width;
        f.height = info_.height;
        f.index = next_index_;
        f.pts_seconds = next_index_ * info_.frame_duration();
        convert(f);
        ++next_index_;
        return f;
    }

private:
    void read_plane(std::vector<std::uint8_t>& plane) {
        std::size_t got = io::read_fully(*in_, plane.data(), plane.size());
        if (got != plane.size())
            throw CorruptStreamError("truncated Y4M frame payload", next_index_);
    }

    void convert(RawFrame& f) const {
        f.rgb.resize(f.pixel_count() * 3);
        std::uint8_t* dst = f.rgb.data();
        const bool sub_x = info_.chroma != Chroma::C444;
        const bool sub_y = info_.chroma == Chroma::C420;
        for (int yy = 0; yy < info_.height; ++yy) {
            const std::uint8_t* yrow =
                y_.data() + static_cast<std::size_t>(yy) * info_.width;
            const std::size_t crow =
                static_cast<std::size_t>(sub_y ? yy / 2 : yy) * chroma_w_;
            for (int xx = 0; xx < info_.width; ++xx) {
                int luma = yrow[xx];
                std::size_t ci = crow + (sub_x ? xx / 2 : xx);
                int cb = cb_[ci] - 128;
                int cr = cr_[ci] - 128;
                int r, g, b;
                if (opts_.full_range) {
                    r = luma + ((359 * cr + 128) >> 8);
                    g = luma - ((88 * cb + 183 * cr + 128) >> 8);
                    b = luma + ((454 * cb + 128) >> 8);
                } else {
                    int c = 298 * (luma - 16) + 128;
                    r = (c + 409 * cr) >> 8;
                    g = (c - 100 * cb - 208 * cr) >> 8;
                    b = (c + 516 * cb) >> 8;
                }
                dst[0] = static_cast<std::uint8_t>(clamp_byte(r));
                dst[1] = static_cast<std::uint8_t>(clamp_byte(g));
                dst[2] = static_cast<std::uint8_t>(clamp_byte(b));
                dst += 3;
            }
        }
    }

    std::unique_ptr<io::ByteReader> in_;
    Y4mOptions opts_;
    StreamInfo info_;
    int chroma_w_ = 0;
    int chroma_h_ = 0;
    long next_index_ = 0;
    std::vector<std::uint8_t> y_, cb_, cr_;
};

const char* chroma_tag(Chroma c) {
    switch (c) {
    case Chroma::C420: return "420";
    case Chroma::C422: return "422";
    case Chroma::C444: return "444";
    }
    return "420";
}

} // namespace

std::unique_ptr<FrameSource> open_y4m(std::unique_ptr<io::ByteReader> in,
                                      Y4mOptions opts) {
    return std::make_unique<Y4mSource>(std::move(in), opts);
}

std::string serialize_y4m_header(const StreamInfo& info) {
    std::ostringstream os;
    os << "YUV4MPEG2 W" << info.width << " H" << info.height << " F"
       << info.fps.num << ":" << info.fps.den << " Ip C" << chroma_tag(info.chroma)
       << "\n";
    return os.str();
}

Y4mWriter::Y4mWriter(std::ostream& out, StreamInfo info) : out_(out), info_(info) {
    info_.validate();
    out_ << serialize_y4m_header(info_);
}

void Y4mWriter::write_frame(const RawFrame& frame) {
    if (frame.width != info_.width || frame.height != info_.height)
        throw ArgumentError("frame size does not match stream header");

    const std::size_t n = frame.pixel_count();
    std::vector<std::uint8_t> y(n), cb_full(n), cr_full(n);
    const std::uint8_t* p = frame.rgb.data();
    for (std::size_t i = 0; i < n; ++i, p += 3) {
        int r = p[0], g = p[1], b = p[2];
        y[i] = static_cast<std::uint8_t>(((66 * r + 129 * g + 25 * b + 128) >> 8) + 16);
        cb_full[i] = static_cast<std::uint8_t>(((-38 * r - 74 * g + 112 * b + 128) >> 8) + 128);
        cr_full[i] = static_cast<std::uint8_t>(((112 * r - 94 * g - 18 * b + 128) >> 8) + 128);
    }

    out_ << "FRAME\n";
    out_.write(reinterpret_cast<const char*>(y.data()),
               static_cast<std::streamsize>(y.size()));

    PlaneLayout cl = chroma_layout(info_);
    const bool sub_x = info_.chroma != Chroma::C444;
    const bool sub_y = info_.chroma == Chroma::C420;
    for (const auto* full : {&cb_full, &cr_full}) {
        std::vector<std::uint8_t> plane(static_cast<std::size_t>(cl.chroma_w) *
                                        cl.chroma_h);
        for (int cy = 0; cy < cl.chroma_h; ++cy) {
            for (int cx = 0; cx < cl.chroma_w; ++cx) {
                int x0 = sub_x ? cx * 2 : cx;
                int y0 = sub_y ? cy * 2 : cy;
                int x1 = std::min(x0 + (sub_x ? 2 : 1), info_.width);
                int y1 = std::min(y0 + (sub_y ? 2 : 1), info_.height);
                int sum = 0, cnt = 0;
                for (int py = y0; py < y1; ++py)
                    for (int px = x0; px < x1; ++px) {
                        sum += (*full)[static_cast<std::size_t>(py) * info_.width + px];
                        ++cnt;
                    }
                plane[static_cast<std::size_t>(cy) * cl.chroma_w + cx] =
                    static_cast<std::uint8_t>((2 * sum + cnt) / (2 * cnt));
            }
        }
        out_.write(reinterpret_cast<const char*>(plane.data()),
                   static_cast<std::streamsize>(plane.size()));
    }
    if (!out_)
        throw IoError("Y4M write failed");
}

} // namespace tavkit
