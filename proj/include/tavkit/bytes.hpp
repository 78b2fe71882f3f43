#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "tavkit/errors.hpp"

namespace tavkit::io {

// Sequential byte input. read() returns the number of bytes actually
// produced; 0 means end of input. Implementations block until at least one
// byte is available or the stream ends.
class ByteReader {
public:
    virtual ~ByteReader() = default;
    virtual std::size_t read(std::uint8_t* dst, std::size_t n) = 0;
};

class MemoryReader final : public ByteReader {
public:
    explicit MemoryReader(std::vector<std::uint8_t> data) : data_(std::move(data)) {}
    explicit MemoryReader(const std::string& data)
        : data_(data.begin(), data.end()) {}

    std::size_t read(std::uint8_t* dst, std::size_t n) override {
        std::size_t avail = data_.size() - pos_;
        std::size_t take = n < avail ? n : avail;
        std::copy(data_.begin() + pos_, data_.begin() + pos_ + take, dst);
        pos_ += take;
        return take;
    }

private:
    std::vector<std::uint8_t> data_;
    std::size_t pos_ = 0;
};

class FileReader final : public ByteReader {
public:
    explicit FileReader(const std::string& path)
        : in_(path, std::ios::binary) {
        if (!in_)
            throw IoError("cannot open file: " + path);
    }

    std::size_t read(std::uint8_t* dst, std::size_t n) override {
        in_.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
        return static_cast<std::size_t>(in_.gcount());
    }

private:
    std::ifstream in_;
};

// Reads exactly n bytes or reports how many it got before the end.
inline std::size_t read_fully(ByteReader& in, std::uint8_t* dst, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
        std::size_t r = in.read(dst + got, n - got);
        if (r == 0)
            break;
        got += r;
    }
    return got;
}

} // namespace tavkit::io
