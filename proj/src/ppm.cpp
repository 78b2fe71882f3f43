#include "tavkit/ppm.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <vector>

namespace fs = std::filesystem;

namespace tavkit {
namespace {

struct PpmHeader {
    int width = 0;
    int height = 0;
};

// Reads the P6 header tokens, honoring '#' comments, and leaves the stream
// positioned at the first pixel byte.
PpmHeader read_ppm_header(std::istream& in, const std::string& path) {
    auto next_token = [&]() -> std::string {
        std::string tok;
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') {
                while ((c = in.get()) != EOF && c != '\n') {}
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty())
                    return tok;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
        return tok;
    };

    std::string magic = next_token();
    if (magic != "P6")
        throw FormatError(path + ": not a binary PPM (magic \"" + magic + "\")");

    auto parse_int = [&](const char* what) {
        std::string tok = next_token();
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw FormatError(path + ": bad PPM " + what + " \"" + tok + "\"");
        return std::stoi(tok);
    };
    PpmHeader hdr;
    hdr.width = parse_int("width");
    hdr.height = parse_int("height");
    int maxval = parse_int("maxval");
    if (hdr.width < 1 || hdr.height < 1)
        throw FormatError(path + ": bad PPM dimensions");
    if (maxval != 255)
        throw UnsupportedFormatError(path + ": PPM maxval " + std::to_string(maxval) +
                                     " not supported (need 255)");
    return hdr;
}

RawFrame read_ppm_stream(std::istream& in, const std::string& path) {
    PpmHeader hdr = read_ppm_header(in, path);
    RawFrame f;
    f.width = hdr.width;
    f.height = hdr.height;
    f.rgb.resize(f.pixel_count() * 3);
    in.read(reinterpret_cast<char*>(f.rgb.data()),
            static_cast<std::streamsize>(f.rgb.size()));
    if (static_cast<std::size_t>(in.gcount()) != f.rgb.size())
        throw FormatError(path + ": truncated PPM pixel data");
    return f;
}

class PpmSequenceSource final : public FrameSource {
public:
    PpmSequenceSource(const std::string& directory, Rational fps) {
        if (!fs::is_directory(directory))
            throw IoError("not a directory: " + directory);
        for (const auto& entry : fs::directory_iterator(directory)) {
            if (entry.is_regular_file() && entry.path().extension() == ".ppm")
                paths_.push_back(entry.path().string());
        }
        std::sort(paths_.begin(), paths_.end(),
                  [](const std::string& a, const std::string& b) {
                      return fs::path(a).filename().string() <
                             fs::path(b).filename().string();
                  });

        info_.fps = fps;
        info_.chroma = Chroma::C444;
        for (std::size_t i = 0; i < paths_.size(); ++i) {
            std::ifstream in(paths_[i], std::ios::binary);
            if (!in)
                throw IoError("cannot open file: " + paths_[i]);
            PpmHeader hdr = read_ppm_header(in, paths_[i]);
            if (i == 0) {
                info_.width = hdr.width;
                info_.height = hdr.height;
            } else if (hdr.width != info_.width || hdr.height != info_.height) {
                throw FormatError("PPM dimension mismatch: " + paths_[0] + " is " +
                                  std::to_string(info_.width) + "x" +
                                  std::to_string(info_.height) + " but " + paths_[i] +
                                  " is " + std::to_string(hdr.width) + "x" +
                                  std::to_string(hdr.height));
            }
        }
        if (!paths_.empty())
            info_.validate();
    }

    const StreamInfo& info() const override { return info_; }

    std::optional<RawFrame> next() override {
        if (pos_ >= paths_.size())
            return std::nullopt;
        RawFrame f = read_ppm(paths_[pos_]);
        f.index = static_cast<long>(pos_);
        f.pts_seconds = f.index * info_.frame_duration();
        ++pos_;
        return f;
    }

private:
    StreamInfo info_;
    std::vector<std::string> paths_;
    std::size_t pos_ = 0;
};

} // namespace

RawFrame read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    return read_ppm_stream(in, path);
}

void write_ppm(const std::string& path, const RawFrame& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open file for writing: " + path);
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.rgb.data()),
              static_cast<std::streamsize>(frame.rgb.size()));
    if (!out)
        throw IoError("PPM write failed: " + path);
}

std::unique_ptr<FrameSource> open_ppm_sequence(const std::string& directory,
                                               Rational fps) {
    return std::make_unique<PpmSequenceSource>(directory, fps);
}

} // namespace tavkit
