#pragma once

#include "tavkit/frame.hpp"

namespace tavkit {

// Per-pixel RGB -> HSV with the byte conventions used throughout:
//   v = max(r,g,b)
//   s = round(255 * (max-min) / max), 0 when max == 0
//   h = round(H_degrees / 2) in [0,179], 0 when the pixel is gray
RawFrame downscale(const RawFrame& frame, int factor);
HsvFrame rgb_to_hsv(const RawFrame& frame);

} // namespace tavkit
