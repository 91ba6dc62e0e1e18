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

#include "canon/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace canon {

auto ToLowerAscii(std::string_view s) -> std::string {
    std::string out{s};
    for (auto& c : out) {
        if (c >= 'A' and c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

auto EqualsIgnoreCase(std::string_view a, std::string_view b) noexcept
    -> bool {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto x = a[i];
        auto y = b[i];
        if (x >= 'A' and x <= 'Z') {
            x = static_cast<char>(x - 'A' + 'a');
        }
        if (y >= 'A' and y <= 'Z') {
            y = static_cast<char>(y - 'A' + 'a');
        }
        if (x != y) {
            return false;
        }
    }
    return true;
}

auto Basename(std::string_view path) -> std::string_view {
    while (not path.empty() and path.back() == '/') {
        path.remove_suffix(1);
    }
    auto slash = path.rfind('/');
    return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

auto ExtensionOf(std::string_view path) -> std::string {
    auto base = Basename(path);
    auto dot = base.rfind('.');
    if (dot == std::string_view::npos or dot == 0) {
        return {};
    }
    return ToLowerAscii(base.substr(dot));
}

auto Utf8InvalidCount(std::string_view data) noexcept -> std::size_t {
    std::size_t invalid = 0;
    std::size_t i = 0;
    auto const n = data.size();
    auto byte = [&](std::size_t k) {
        return static_cast<std::uint8_t>(data[k]);
    };
    while (i < n) {
        auto b = byte(i);
        if (b < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        std::uint8_t lo = 0x80;
        std::uint8_t hi = 0xBF;
        if (b >= 0xC2 and b <= 0xDF) {
            len = 2;
        }
        else if (b >= 0xE0 and b <= 0xEF) {
            len = 3;
            if (b == 0xE0) {
                lo = 0xA0;
            }
            if (b == 0xED) {
                hi = 0x9F;
            }
        }
        else if (b >= 0xF0 and b <= 0xF4) {
            len = 4;
            if (b == 0xF0) {
                lo = 0x90;
            }
            if (b == 0xF4) {
                hi = 0x8F;
            }
        }
        else {
            ++invalid;
            ++i;
            continue;
        }
        std::size_t k = 1;
        for (; k < len and i + k < n; ++k) {
            auto c = byte(i + k);
            auto const first = (k == 1);
            if (c < (first ? lo : 0x80) or c > (first ? hi : 0xBF)) {
                break;
            }
        }
        if (k == len) {
            i += len;
        }
        else {
            ++invalid;
            i += k;
        }
    }
    return invalid;
}

auto LooksLikeText(std::string_view path, std::string_view payload) -> bool {
    static constexpr std::array<std::string_view, 30> kTextExtensions{
        ".txt",  ".md",   ".mf",   ".properties", ".xml",  ".json",
        ".java", ".sh",   ".bat",  ".cmd",        ".html", ".htm",
        ".css",  ".js",   ".yml",  ".yaml",       ".sql",  ".csv",
        ".list", ".pom",  ".sf",   ".kt",         ".groovy", ".scala",
        ".ini",  ".conf", ".cfg",  ".toml",       ".spdx", ".svg"};
    if (payload.empty()) {
        return true;
    }
    if (Utf8InvalidCount(payload) * 100 >= payload.size()) {
        return false;
    }
    auto ext = ExtensionOf(path);
    auto known = std::find(kTextExtensions.begin(), kTextExtensions.end(),
                           ext) != kTextExtensions.end();
    return known or payload.find('\0') == std::string_view::npos;
}

auto SplitLinesKeepEnds(std::string_view text)
    -> std::vector<std::string_view> {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start + 1));
        start = nl + 1;
    }
    return lines;
}

auto TrimAscii(std::string_view s) -> std::string_view {
    auto ws = [](char c) {
        return c == ' ' or c == '\t' or c == '\r' or c == '\n' or c == '\f';
    };
    while (not s.empty() and ws(s.front())) {
        s.remove_prefix(1);
    }
    while (not s.empty() and ws(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace canon
