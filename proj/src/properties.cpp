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

#include "canon/properties.hpp"

#include <algorithm>

#include "canon/text.hpp"

namespace canon {
namespace {

auto IsBlank(char c) -> bool { return c == ' ' or c == '\t' or c == '\f'; }

auto StripLeadingBlanks(std::string_view s) -> std::string_view {
    while (not s.empty() and IsBlank(s.front())) {
        s.remove_prefix(1);
    }
    return s;
}

auto EndsInContinuation(std::string_view line) -> bool {
    std::size_t slashes = 0;
    for (auto it = line.rbegin(); it != line.rend() and *it == '\\'; ++it) {
        ++slashes;
    }
    return slashes % 2 == 1;
}

auto PhysicalLines(std::string_view text) -> std::vector<std::string_view> {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n' or text[i] == '\r') {
            lines.push_back(text.substr(start, i - start));
            if (text[i] == '\r' and i + 1 < text.size() and
                text[i + 1] == '\n') {
                ++i;
            }
            start = i + 1;
        }
    }
    if (start < text.size()) {
        lines.push_back(text.substr(start));
    }
    return lines;
}

auto KeyOf(std::string_view line) -> std::string {
    std::string key;
    for (std::size_t i = 0; i < line.size(); ++i) {
        auto c = line[i];
        if (c == '\\' and i + 1 < line.size()) {
            key.push_back(c);
            key.push_back(line[++i]);
            continue;
        }
        if (c == '=' or c == ':' or IsBlank(c)) {
            break;
        }
        key.push_back(c);
    }
    return key;
}

}  // namespace

auto ParseProperties(std::string_view text) -> std::vector<PropertyLine> {
    std::vector<PropertyLine> out;
    auto lines = PhysicalLines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = StripLeadingBlanks(lines[i]);
        if (line.empty() or line.front() == '#' or line.front() == '!') {
            continue;
        }
        std::string logical{line};
        while (EndsInContinuation(logical) and i + 1 < lines.size()) {
            logical.pop_back();
            logical += StripLeadingBlanks(lines[++i]);
        }
        if (EndsInContinuation(logical)) {
            logical.pop_back();
        }
        out.push_back({KeyOf(logical), std::move(logical)});
    }
    return out;
}

auto CanonicalizeProperties(std::string_view text, PropertiesOptions options)
    -> std::string {
    auto is_eclipse = [](PropertyLine const& p) {
        return p.key.rfind("m2e.", 0) == 0;
    };
    if (not options.canonical) {
        // Only remove m2e.* lines; everything else stays byte-identical.
        if (not options.drop_eclipse_keys) {
            return std::string{text};
        }
        std::string out;
        auto lines = PhysicalLines(text);
        std::size_t pos = 0;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            auto begin = static_cast<std::size_t>(lines[i].data() - text.data());
            auto stripped = StripLeadingBlanks(lines[i]);
            bool drop = not stripped.empty() and stripped.front() != '#' and
                        stripped.front() != '!' and
                        KeyOf(stripped).rfind("m2e.", 0) == 0;
            auto j = i;
            while (EndsInContinuation(lines[j]) and j + 1 < lines.size()) {
                ++j;
            }
            auto end = static_cast<std::size_t>(lines[j].data() - text.data()) +
                       lines[j].size();
            if (end < text.size()) {
                bool crlf = text[end] == '\r' and end + 1 < text.size() and
                            text[end + 1] == '\n';
                end += crlf ? 2 : 1;
            }
            if (not drop) {
                out.append(text.substr(begin, end - begin));
            }
            pos = end;
            i = j;
        }
        out.append(text.substr(std::min(pos, text.size())));
        return out;
    }
    auto props = ParseProperties(text);
    if (options.drop_eclipse_keys) {
        std::erase_if(props, is_eclipse);
    }
    std::stable_sort(props.begin(), props.end(),
                     [](auto const& a, auto const& b) { return a.key < b.key; });
    std::string out;
    for (auto const& p : props) {
        out += p.text;
        out.push_back('\n');
    }
    return out;
}

}  // namespace canon
