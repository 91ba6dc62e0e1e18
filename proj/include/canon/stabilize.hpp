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

#ifndef INCLUDED_CANON_STABILIZE_HPP
#define INCLUDED_CANON_STABILIZE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "canon/archive.hpp"
#include "canon/classfile.hpp"
#include "canon/rules.hpp"
#include "canon/sbom.hpp"

namespace canon {

struct StabilizeResult {
    Archive archive;
    /// Rules that changed at least one byte, in catalog order.
    std::vector<std::string> applied_rule_ids;
    /// Entries left untouched because a rule could not be applied safely,
    /// as "path: reason". Nested paths are joined with "!/".
    std::vector<std::string> flags;
};

[[nodiscard]] auto StabilizeArchiveDetailed(Archive archive,
                                            RuleProfile const& profile)
    -> StabilizeResult;

[[nodiscard]] auto StabilizeArchive(Archive archive, RuleProfile const& profile)
    -> Archive;

/// parse, stabilize, write. Throws Error{MalformedArchive} when the bytes
/// are not a supported container.
[[nodiscard]] auto StabilizeBytes(std::string_view bytes,
                                  RuleProfile const& profile)
    -> std::string;

/// Removes git.properties, git.json and META-INF/maven/**/pom.properties.
[[nodiscard]] auto StripVersioningEntries(Archive archive) -> Archive;

[[nodiscard]] auto ClassfileOptionsFor(RuleProfile const& profile)
    -> ClassfileOptions;

[[nodiscard]] auto SbomOptionsFor(RuleProfile const& profile) -> SbomOptions;

}  // namespace canon

#endif  // INCLUDED_CANON_STABILIZE_HPP
