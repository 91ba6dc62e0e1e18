// Copyright 2026 The canon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INCLUDED_CANON_TEXT_DIFF_HPP
#define INCLUDED_CANON_TEXT_DIFF_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace canon {

/// One unified-diff hunk. Each line starts with ' ', '-' or '+', keeps its
/// original terminator, and is followed by "\ No newline at end of file"
/// when it has none.
struct Hunk {
    std::size_t old_start{0};
    std::size_t old_count{0};
    std::size_t new_start{0};
    std::size_t new_count{0};
    std::vector<std::string> lines;

    [[nodiscard]] auto Header() const -> std::string;
    auto operator==(Hunk const&) const -> bool = default;
};

/// Minimal line diff (Myers) grouped into hunks with `context` lines of
/// context. Empty iff a == b.
[[nodiscard]] auto UnifiedTextDiff(std::string_view a, std::string_view b,
                                   std::size_t context = 3)
    -> std::vector<Hunk>;

/// "--- from\n+++ to\n" followed by every hunk.
[[nodiscard]] auto FormatUnifiedDiff(std::vector<Hunk> const& hunks,
                                     std::string_view from,
                                     std::string_view to) -> std::string;

/// Hunks only, without file headers.
[[nodiscard]] auto FormatHunks(std::vector<Hunk> const& hunks) -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_TEXT_DIFF_HPP
