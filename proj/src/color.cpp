#include "tavkit/color.hpp"

#include <algorithm>
#include <cstdint>

namespace tavkit {

RawFrame downscale(const RawFrame& frame, int factor) {
    if (factor < 1)
        throw ArgumentError("downscale factor must be >= 1, got " +
                            std::to_string(factor));
    if (factor == 1)
        return frame;

    RawFrame out;
    out.width = (frame.width + factor - 1) / factor;
    out.height = (frame.height + factor - 1) / factor;
    out.index = frame.index;
    out.pts_seconds = frame.pts_seconds;
    out.rgb.resize(out.pixel_count() * 3);

    for (int oy = 0; oy < out.height; ++oy) {
        int y0 = oy * factor;
        int y1 = std::min(y0 + factor, frame.height);
        for (int ox = 0; ox < out.width; ++ox) {
            int x0 = ox * factor;
            int x1 = std::min(x0 + factor, frame.width);
            // Edge tiles average over the pixels that exist, not a padded tile.
            std::uint32_t sum[3] = {0, 0, 0};
            for (int y = y0; y < y1; ++y) {
                const std::uint8_t* row = frame.rgb.data() +
                    (static_cast<std::size_t>(y) * frame.width + x0) * 3;
                for (int x = x0; x < x1; ++x) {
                    sum[0] += row[0];
                    sum[1] += row[1];
                    sum[2] += row[2];
                    row += 3;
                }
            }
            std::uint32_t count = static_cast<std::uint32_t>(y1 - y0) *
                                  static_cast<std::uint32_t>(x1 - x0);
            std::uint8_t* dst = out.rgb.data() +
                (static_cast<std::size_t>(oy) * out.width + ox) * 3;
            for (int c = 0; c < 3; ++c)
                dst[c] = static_cast<std::uint8_t>((2 * sum[c] + count) / (2 * count));
        }
    }
    return out;
}

HsvFrame rgb_to_hsv(const RawFrame& frame) {
    HsvFrame out;
    out.width = frame.width;
    out.height = frame.height;
    out.index = frame.index;
    out.pts_seconds = frame.pts_seconds;

    std::size_t n = frame.pixel_count();
    out.h.resize(n);
    out.s.resize(n);
    out.v.resize(n);

    const std::uint8_t* p = frame.rgb.data();
    for (std::size_t i = 0; i < n; ++i, p += 3) {
        int r = p[0], g = p[1], b = p[2];
        int maxc = std::max(r, std::max(g, b));
        int minc = std::min(r, std::min(g, b));
        int delta = maxc - minc;

        out.v[i] = static_cast<std::uint8_t>(maxc);
        // round(255*delta/max) in exact integer arithmetic
        out.s[i] = maxc == 0
            ? 0
            : static_cast<std::uint8_t>((510 * delta + maxc) / (2 * maxc));

        if (delta == 0) {
            out.h[i] = 0;
            continue;
        }
        // Half-degree hue: 30 units per sextant, first max channel wins ties.
        double half_deg;
        if (maxc == r) {
            half_deg = 30.0 * (g - b) / delta;
            if (half_deg < 0)
                half_deg += 180.0;
        } else if (maxc == g) {
            half_deg = 30.0 * (b - r) / delta + 60.0;
        } else {
            half_deg = 30.0 * (r - g) / delta + 120.0;
        }
        int h = static_cast<int>(half_deg + 0.5);
        out.h[i] = static_cast<std::uint8_t>(h == 180 ? 0 : h);
    }
    return out;
}

} // namespace tavkit
