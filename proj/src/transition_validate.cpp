#include "tavkit/transition_validate.hpp"

namespace tavkit {

ValidationResult validate_clip(FrameSource& src, const ValidationConfig& cfg) {
    if (cfg.diff_threshold < 0)
        throw ArgumentError("diff_threshold must be nonnegative");

    ValidationResult res;
    res.threshold_used = cfg.diff_threshold;

    std::optional<RawFrame> prev = src.next();
    if (!prev)
        return res;
    while (std::optional<RawFrame> cur = src.next()) {
        if (cur->rgb.size() != prev->rgb.size())
            throw ArgumentError("frame size changed mid-clip");
        std::uint64_t sum = 0;
        const std::uint8_t* a = prev->rgb.data();
        const std::uint8_t* b = cur->rgb.data();
        for (std::size_t i = 0; i < cur->rgb.size(); ++i) {
            int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
            sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
        }
        double diff = static_cast<double>(sum) / static_cast<double>(cur->rgb.size());
        if (!res.argmax_frame || diff > res.max_diff) {
            res.max_diff = diff;
            res.argmax_frame = cur->index;
        }
        if (diff > cfg.diff_threshold) {
            res.detected = true;
            if (cfg.early_exit) {
                res.max_diff = diff;
                res.argmax_frame = cur->index;
                return res;
            }
        }
        prev = std::move(cur);
    }
    return res;
}

} // namespace tavkit
