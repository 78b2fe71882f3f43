#include "tavkit/prompt_compose.hpp"

#include <cctype>

namespace tavkit {
namespace {

constexpr std::string_view kExplicitPrefix = "previous scene:";
constexpr std::string_view kExplicitSeparator = "; then next scene:";
// Label variant seen in running prose rather than in prompt lists.
constexpr std::string_view kAltSeparator = "; next scene:";

std::string lower_first(std::string s) {
    if (!s.empty())
        s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    return s;
}

std::string upper_first(std::string s) {
    if (!s.empty())
        s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

bool starts_with_label(std::string_view s, std::string_view label) {
    if (s.size() < label.size())
        return false;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) !=
            static_cast<unsigned char>(label[i]))
            return false;
    }
    return true;
}

std::size_t find_label(std::string_view s, std::string_view label) {
    if (s.size() < label.size())
        return std::string_view::npos;
    for (std::size_t i = 0; i + label.size() <= s.size(); ++i) {
        if (starts_with_label(s.substr(i), label))
            return i;
    }
    return std::string_view::npos;
}

std::string require_normalized(std::string_view caption, const char* which) {
    std::string c = normalize_caption(caption);
    if (c.empty())
        throw ArgumentError(std::string(which) + " caption is empty");
    return c;
}

} // namespace

const char* to_string(PromptStyle style) {
    switch (style) {
    case PromptStyle::single_scene: return "single";
    case PromptStyle::implicit_transition: return "implicit";
    case PromptStyle::explicit_transition: return "explicit";
    }
    return "single";
}

PromptStyle parse_style(std::string_view name) {
    if (name == "single")
        return PromptStyle::single_scene;
    if (name == "implicit")
        return PromptStyle::implicit_transition;
    if (name == "explicit")
        return PromptStyle::explicit_transition;
    throw ArgumentError("unknown prompt style \"" + std::string(name) +
                        "\" (expected single, implicit or explicit)");
}

std::string normalize_caption(std::string_view caption) {
    std::size_t begin = 0, end = caption.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(caption[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(caption[end - 1])))
        --end;
    if (end > begin && caption[end - 1] == '.')
        --end;
    return std::string(caption.substr(begin, end - begin));
}

std::string compose(const SceneCaptions& captions, PromptStyle style) {
    std::string prev = require_normalized(captions.prev, "previous");
    if (style == PromptStyle::single_scene)
        return upper_first(std::move(prev)) + ".";

    if (!captions.next)
        throw ArgumentError(std::string(to_string(style)) +
                            " style needs a next-scene caption");
    std::string next = require_normalized(*captions.next, "next");

    if (style == PromptStyle::implicit_transition) {
        // "; " is the style's own separator, so captions must not contain it.
        if (prev.find("; ") != std::string::npos ||
            next.find("; ") != std::string::npos)
            throw ArgumentError("caption contains \"; \", ambiguous for the "
                                "implicit style");
        return upper_first(std::move(prev)) + "; " + lower_first(std::move(next)) + ".";
    }
    return std::string(kExplicitPrefix) + " " + lower_first(std::move(prev)) +
           std::string(kExplicitSeparator) + " " + lower_first(std::move(next));
}

ParsedPrompt parse_prompt(std::string_view prompt) {
    std::string trimmed = normalize_caption(prompt); // trim + drop trailing '.'
    if (trimmed.empty())
        throw ArgumentError("empty prompt");

    ParsedPrompt out;
    if (starts_with_label(trimmed, kExplicitPrefix)) {
        std::string_view rest = std::string_view(trimmed).substr(kExplicitPrefix.size());
        std::size_t sep = find_label(rest, kExplicitSeparator);
        std::size_t sep_len = kExplicitSeparator.size();
        if (sep == std::string_view::npos) {
            sep = find_label(rest, kAltSeparator);
            sep_len = kAltSeparator.size();
        }
        if (sep != std::string_view::npos) {
            out.style = PromptStyle::explicit_transition;
            out.captions.prev = lower_first(normalize_caption(rest.substr(0, sep)));
            out.captions.next =
                lower_first(normalize_caption(rest.substr(sep + sep_len)));
            return out;
        }
    }

    std::size_t first = trimmed.find("; ");
    if (first != std::string::npos && trimmed.find("; ", first + 1) == std::string::npos) {
        out.style = PromptStyle::implicit_transition;
        out.captions.prev =
            lower_first(normalize_caption(std::string_view(trimmed).substr(0, first)));
        out.captions.next =
            lower_first(normalize_caption(std::string_view(trimmed).substr(first + 2)));
        return out;
    }

    out.style = PromptStyle::single_scene;
    out.captions.prev = lower_first(std::move(trimmed));
    return out;
}

} // namespace tavkit
