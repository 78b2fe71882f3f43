#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tavkit/errors.hpp"

namespace tavkit {

struct SceneCaptions {
    std::string prev;
    std::optional<std::string> next;
};

enum class PromptStyle {
    single_scene,         // "First scene."
    implicit_transition,  // "First scene; second scene."
    explicit_transition,  // "previous scene: first; then next scene: second"
};

const char* to_string(PromptStyle style);
PromptStyle parse_style(std::string_view name);

// Trims surrounding whitespace and strips one trailing period.
std::string normalize_caption(std::string_view caption);

// Composes the prompt for one clip. Both captions are normalized first;
// only the first character's case is ever adjusted, so mid-caption proper
// nouns survive.
std::string compose(const SceneCaptions& captions, PromptStyle style);

struct ParsedPrompt {
    PromptStyle style = PromptStyle::single_scene;
    SceneCaptions captions;
};

// Inverse of compose on normalized captions. Also accepts the capitalized
// "Previous scene: ...; Next scene: ..." label variant.
ParsedPrompt parse_prompt(std::string_view prompt);

} // namespace tavkit
