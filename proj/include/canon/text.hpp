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

#ifndef INCLUDED_CANON_TEXT_HPP
#define INCLUDED_CANON_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace canon {

[[nodiscard]] auto ToLowerAscii(std::string_view s) -> std::string;
[[nodiscard]] auto EqualsIgnoreCase(std::string_view a,
                                    std::string_view b) noexcept -> bool;

/// Last path component; directories keep no trailing slash.
[[nodiscard]] auto Basename(std::string_view path) -> std::string_view;

/// Lowercased extension including the dot, or empty.
[[nodiscard]] auto ExtensionOf(std::string_view path) -> std::string;

/// Number of maximal invalid UTF-8 subsequences (what a lossy decoder would
/// replace with U+FFFD).
[[nodiscard]] auto Utf8InvalidCount(std::string_view data) noexcept
    -> std::size_t;

/// Text heuristic shared by the differ and the line-ending rule: valid UTF-8
/// with under 1% replacements, and either a known text extension or no NUL.
[[nodiscard]] auto LooksLikeText(std::string_view path,
                                 std::string_view payload) -> bool;

/// Splits into lines, each keeping its terminator ("\n"). The final line has
/// no terminator when the text does not end in a newline.
[[nodiscard]] auto SplitLinesKeepEnds(std::string_view text)
    -> std::vector<std::string_view>;

[[nodiscard]] auto TrimAscii(std::string_view s) -> std::string_view;

}  // namespace canon

#endif  // INCLUDED_CANON_TEXT_HPP
