#include "voxmerge/prompt_diff.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "voxmerge/error.hpp"

namespace voxmerge {

Tokens tokenize_prompt(std::string_view prompt) {
    Tokens out;
    std::string current;
    for (char ch : prompt) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!current.empty()) {
                out.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    if (!current.empty()) {
        out.push_back(std::move(current));
    }
    return out;
}

std::string join_tokens(const Tokens& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

Tokens PromptDiff::generic(const PromptChange& change) const {
    if (change.removed.empty()) {
        return input;
    }
    Tokens out(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(change.input_begin));
    out.emplace_back("object");
    const std::size_t resume = change.input_begin + change.removed.size();
    out.insert(out.end(), input.begin() + static_cast<std::ptrdiff_t>(resume), input.end());
    return out;
}

Tokens PromptDiff::generic() const {
    const PromptChange* c = primary();
    return c ? generic(*c) : input;
}

PromptDiff prompt_diff(std::string_view input_prompt, std::string_view edit_prompt) {
    PromptDiff diff;
    diff.input = tokenize_prompt(input_prompt);
    diff.edit = tokenize_prompt(edit_prompt);
    const Tokens& a = diff.input;
    const Tokens& b = diff.edit;
    if (a.empty() || b.empty()) {
        throw PreconditionError("prompts must contain at least one token");
    }

    // suffix[i][j] = LCS length of a[i..] and b[j..]
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::size_t> suffix((n + 1) * (m + 1), 0);
    const auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            suffix[at(i, j)] = a[i] == b[j]
                                   ? suffix[at(i + 1, j + 1)] + 1
                                   : std::max(suffix[at(i + 1, j)], suffix[at(i, j + 1)]);
        }
    }

    std::size_t i = 0;
    std::size_t j = 0;
    PromptChange open;
    bool in_change = false;
    const auto close = [&] {
        if (in_change) {
            diff.changes.push_back(std::move(open));
            open = PromptChange{};
            in_change = false;
        }
    };
    const auto begin_change = [&] {
        if (!in_change) {
            open.input_begin = i;
            open.edit_begin = j;
            in_change = true;
        }
    };
    while (i < n || j < m) {
        if (i < n && j < m && a[i] == b[j] && suffix[at(i, j)] == suffix[at(i + 1, j + 1)] + 1) {
            close();
            ++i;
            ++j;
        } else if (j == m || (i < n && suffix[at(i + 1, j)] >= suffix[at(i, j + 1)])) {
            begin_change();
            open.removed.push_back(a[i]);
            ++i;
        } else {
            begin_change();
            open.added.push_back(b[j]);
            ++j;
        }
    }
    close();

    diff.status = diff.changes.empty() ? PromptDiff::Status::no_edit : PromptDiff::Status::edit;
    return diff;
}

}  // namespace voxmerge
