#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace voxmerge {

using Tokens = std::vector<std::string>;

/// Whitespace split with ASCII case folding.
Tokens tokenize_prompt(std::string_view prompt);
std::string join_tokens(const Tokens& tokens);

/// One contiguous change between two prompts. `removed` is the span
/// [input_begin, input_begin + removed.size()) of the input prompt and
/// `added` the span [edit_begin, edit_begin + added.size()) of the edit
/// prompt. Either side may be empty (pure insertion or deletion).
struct PromptChange {
    Tokens removed;
    Tokens added;
    std::size_t input_begin = 0;
    std::size_t edit_begin = 0;
};

struct PromptDiff {
    enum class Status { edit, no_edit };

    Status status = Status::no_edit;
    /// Every changed span, in prompt order.
    std::vector<PromptChange> changes;
    Tokens input;
    Tokens edit;

    /// First change; callers with several changes pick via `changes`.
    const PromptChange* primary() const noexcept {
        return changes.empty() ? nullptr : &changes.front();
    }
    /// Input prompt with the removed span of `change` replaced by the word
    /// "object". A pure insertion leaves the input unchanged.
    Tokens generic(const PromptChange& change) const;
    /// generic() of the primary change, or the input when nothing changed.
    Tokens generic() const;
};

/// Aligns the prompts by longest common token subsequence and reports the
/// unmatched runs. Throws PreconditionError on an empty prompt.
PromptDiff prompt_diff(std::string_view input_prompt, std::string_view edit_prompt);

}  // namespace voxmerge
