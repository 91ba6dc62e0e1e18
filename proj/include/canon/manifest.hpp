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

#ifndef INCLUDED_CANON_MANIFEST_HPP
#define INCLUDED_CANON_MANIFEST_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canon/rules.hpp"

namespace canon {

struct ManifestAttribute {
    std::string key;
    std::string value;

    auto operator==(ManifestAttribute const&) const -> bool = default;
};

/// The first section is the main section; later ones are per-entry
/// sections that normally start with Name.
using ManifestSection = std::vector<ManifestAttribute>;

/// Unfolds continuation lines (LF, CRLF or CR terminated). Throws
/// Error{NotAManifest} on empty input or a line that is not "Key: value".
[[nodiscard]] auto ParseManifest(std::string_view text)
    -> std::vector<ManifestSection>;

/// JAR framing: lines folded at 72 bytes, CRLF endings, a blank line after
/// every section.
[[nodiscard]] auto WriteManifest(std::vector<ManifestSection> const& sections)
    -> std::string;

/// Splits an OSGi header value on top-level commas. Commas inside double
/// quotes do not split. Returns nullopt for unbalanced quotes or empty
/// clauses.
[[nodiscard]] auto SplitOsgiList(std::string_view value)
    -> std::optional<std::vector<std::string>>;

struct ManifestResult {
    std::string text;
    std::vector<std::string> applied_rule_ids;
    std::vector<std::string> flags;
};

/// Applies the manifest.* rules enabled in the profile. Framing is always
/// normalized.
[[nodiscard]] auto CanonicalizeManifestDetailed(std::string_view text,
                                                RuleProfile const& profile)
    -> ManifestResult;

[[nodiscard]] auto CanonicalizeManifest(std::string_view text,
                                        RuleProfile const& profile)
    -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_MANIFEST_HPP
