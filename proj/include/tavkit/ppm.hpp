#pragma once

#include <memory>
#include <string>

#include "tavkit/frame.hpp"

namespace tavkit {

// Binary P6, maxval 255.
RawFrame read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RawFrame& frame);

// Yields the directory's *.ppm files in lexicographic filename order with
// synthesized pts. All files must share one dimension; headers are checked
// up front, pixel data is read lazily. An empty directory is an empty
// source, not an error.
std::unique_ptr<FrameSource> open_ppm_sequence(const std::string& directory,
                                               Rational fps);

} // namespace tavkit
