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

#include "canon/manifest.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

#include "canon/error.hpp"
#include "canon/text.hpp"

namespace canon {
namespace {

constexpr std::size_t kLineLimit = 72;

struct Removal {
    std::string_view rule_id;
    std::string_view key;
};

constexpr std::array kRemovals{
    Removal{"manifest.built-by", "Built-By"},
    Removal{"manifest.os-version", "Os-Version"},
    Removal{"manifest.build-jdk", "Build-Jdk"},
    Removal{"manifest.build-jdk", "Build-Jdk-Spec"},
    Removal{"manifest.created-by", "Created-By"},
    Removal{"manifest.originally-created-by", "Originally-Created-By"},
    Removal{"manifest.implementation-build-java-vendor",
            "Implementation-Build-Java-Vendor"},
    Removal{"manifest.scm-revision", "SCM-Revision"},
    Removal{"manifest.scm-git-branch", "SCM-Git-Branch"},
    Removal{"manifest.bnd-lastmodified", "Bnd-LastModified"},
};

constexpr std::array<std::string_view, 5> kListHeaders{
    "Export-Package", "Import-Package", "Include-Resource", "Private-Package",
    "Provide-Capability"};

auto IsKeyChar(char c) -> bool {
    return (c >= 'A' and c <= 'Z') or (c >= 'a' and c <= 'z') or
           (c >= '0' and c <= '9') or c == '-' or c == '_';
}

auto SplitPhysicalLines(std::string_view text) -> std::vector<std::string_view> {
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

void AppendFolded(std::string* out, std::string_view line) {
    auto chunk = std::min(line.size(), kLineLimit);
    out->append(line.substr(0, chunk));
    out->append("\r\n");
    line.remove_prefix(chunk);
    while (not line.empty()) {
        chunk = std::min(line.size(), kLineLimit - 1);
        out->push_back(' ');
        out->append(line.substr(0, chunk));
        out->append("\r\n");
        line.remove_prefix(chunk);
    }
}

auto IsListHeader(std::string_view key) -> bool {
    return std::any_of(kListHeaders.begin(), kListHeaders.end(),
                       [key](auto h) { return EqualsIgnoreCase(key, h); });
}

auto EndsWithIgnoreCase(std::string_view s, std::string_view suffix) -> bool {
    return s.size() >= suffix.size() and
           EqualsIgnoreCase(s.substr(s.size() - suffix.size()), suffix);
}

auto SectionName(ManifestSection const& section) -> std::string {
    for (auto const& a : section) {
        if (EqualsIgnoreCase(a.key, "Name")) {
            return a.value;
        }
    }
    return {};
}

void SortSection(ManifestSection* section, std::string_view pinned) {
    auto first = std::stable_partition(
        section->begin(), section->end(),
        [pinned](auto const& a) { return EqualsIgnoreCase(a.key, pinned); });
    std::stable_sort(first, section->end(), [](auto const& a, auto const& b) {
        return a.key < b.key;
    });
}

}  // namespace

auto ParseManifest(std::string_view text) -> std::vector<ManifestSection> {
    std::vector<ManifestSection> sections(1);
    bool any = false;
    for (auto line : SplitPhysicalLines(text)) {
        if (line.empty()) {
            if (not sections.back().empty()) {
                sections.emplace_back();
            }
            continue;
        }
        if (line.front() == ' ') {
            if (sections.back().empty()) {
                throw Error{ErrorCode::NotAManifest,
                            "continuation line without an attribute"};
            }
            sections.back().back().value.append(line.substr(1));
            continue;
        }
        auto colon = line.find(':');
        if (colon == 0 or colon == std::string_view::npos or
            not std::all_of(line.begin(), line.begin() + colon, IsKeyChar)) {
            throw Error{ErrorCode::NotAManifest,
                        "not a 'Key: value' line: " +
                            std::string{line.substr(0, 80)}};
        }
        auto rest = line.substr(colon + 1);
        if (not rest.empty()) {
            if (rest.front() != ' ') {
                throw Error{ErrorCode::NotAManifest,
                            "missing space after ':' in " +
                                std::string{line.substr(0, colon)}};
            }
            rest.remove_prefix(1);
        }
        sections.back().push_back(
            {std::string{line.substr(0, colon)}, std::string{rest}});
        any = true;
    }
    if (not any) {
        throw Error{ErrorCode::NotAManifest, "no attributes"};
    }
    if (sections.size() > 1 and sections.back().empty()) {
        sections.pop_back();
    }
    return sections;
}

auto WriteManifest(std::vector<ManifestSection> const& sections)
    -> std::string {
    std::string out;
    for (auto const& section : sections) {
        for (auto const& a : section) {
            AppendFolded(&out, a.key + ": " + a.value);
        }
        out.append("\r\n");
    }
    return out;
}

auto SplitOsgiList(std::string_view value)
    -> std::optional<std::vector<std::string>> {
    std::vector<std::string> parts;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < value.size(); ++i) {
        auto c = value[i];
        if (quoted and c == '\\' and i + 1 < value.size()) {
            current.push_back(c);
            current.push_back(value[++i]);
            continue;
        }
        if (c == '"') {
            quoted = not quoted;
        }
        if (c == ',' and not quoted) {
            auto trimmed = TrimAscii(current);
            if (trimmed.empty()) {
                return std::nullopt;
            }
            parts.emplace_back(trimmed);
            current.clear();
            continue;
        }
        current.push_back(c);
    }
    auto trimmed = TrimAscii(current);
    if (quoted or trimmed.empty()) {
        return std::nullopt;
    }
    parts.emplace_back(trimmed);
    return parts;
}

auto CanonicalizeManifestDetailed(std::string_view text,
                                  RuleProfile const& profile)
    -> ManifestResult {
    auto sections = ParseManifest(text);
    std::set<std::string> applied;
    ManifestResult result;

    for (std::size_t s = 0; s < sections.size(); ++s) {
        auto& section = sections[s];
        auto const before = section.size();
        std::erase_if(section, [&](ManifestAttribute const& a) {
            for (auto const& r : kRemovals) {
                if (profile.Enabled(r.rule_id) and
                    EqualsIgnoreCase(a.key, r.key)) {
                    applied.emplace(r.rule_id);
                    return true;
                }
            }
            if (s > 0 and profile.Enabled("manifest.entry-digests") and
                EndsWithIgnoreCase(a.key, "-Digest")) {
                applied.emplace("manifest.entry-digests");
                return true;
            }
            return false;
        });
        if (s > 0 and section.size() < before and section.size() == 1 and
            EqualsIgnoreCase(section.front().key, "Name")) {
            section.clear();
        }

        if (profile.Enabled("manifest.value-order")) {
            for (auto& a : section) {
                if (not IsListHeader(a.key)) {
                    continue;
                }
                auto parts = SplitOsgiList(a.value);
                if (not parts) {
                    result.flags.push_back("malformed OSGi header left unsorted: " +
                                           a.key);
                    continue;
                }
                std::sort(parts->begin(), parts->end());
                std::string joined;
                for (auto const& p : *parts) {
                    if (not joined.empty()) {
                        joined.push_back(',');
                    }
                    joined += p;
                }
                if (joined != a.value) {
                    a.value = std::move(joined);
                    applied.emplace("manifest.value-order");
                }
            }
        }
    }
    sections.erase(std::remove_if(sections.begin() + 1, sections.end(),
                                  [](auto const& s) { return s.empty(); }),
                   sections.end());

    if (profile.Enabled("manifest.attribute-order")) {
        auto const original = sections;
        for (std::size_t s = 0; s < sections.size(); ++s) {
            if (profile.sort_manifest_keys) {
                SortSection(&sections[s], s == 0 ? "Manifest-Version" : "Name");
            }
        }
        std::stable_sort(sections.begin() + 1, sections.end(),
                         [](auto const& a, auto const& b) {
                             return SectionName(a) < SectionName(b);
                         });
        if (sections != original) {
            applied.emplace("manifest.attribute-order");
        }
    }

    result.text = WriteManifest(sections);
    result.applied_rule_ids.assign(applied.begin(), applied.end());
    return result;
}

auto CanonicalizeManifest(std::string_view text, RuleProfile const& profile)
    -> std::string {
    return CanonicalizeManifestDetailed(text, profile).text;
}

}  // namespace canon
