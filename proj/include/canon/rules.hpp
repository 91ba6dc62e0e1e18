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

#ifndef INCLUDED_CANON_RULES_HPP
#define INCLUDED_CANON_RULES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "canon/taxonomy.hpp"

namespace canon {

enum class ProfileName { ArchiveOnly, Default, Aggressive };

/// "archive", "default" or "aggressive" (the CLI spelling).
[[nodiscard]] auto ToString(ProfileName name) noexcept -> std::string_view;

/// Accepts the CLI spelling, "archive-only" and the enumerator names, any case.
[[nodiscard]] auto ParseProfileName(std::string_view s)
    -> std::optional<ProfileName>;

enum class RuleKind {
    ArchiveMetadata,  // rewrites container or entry metadata
    EntryRemoval,     // drops whole entries
    EntryContent,     // rewrites entry payloads
    EntryPath,        // rewrites entry paths
    Classifier,       // identity; only labels differences
};

[[nodiscard]] auto ToString(RuleKind kind) noexcept -> std::string_view;

using RulePredicate =
    std::function<bool(std::string_view path, std::string_view payload)>;

struct Rule {
    std::string id;
    TaxonomyCause cause;
    /// Catalog causes this rule removes completely when enabled. A pair whose
    /// only difference has cause C is expected to canonicalize under profile
    /// P iff P enables a rule covering C.
    std::vector<TaxonomyCause> covers;
    Mitigation mitigation{Mitigation::CanonicalizeByRebuilder};
    RuleKind kind{RuleKind::Classifier};
    RulePredicate applies_to;
    std::vector<ProfileName> profiles;
    std::string description;
};

/// The ZIP-representable floor, 1980-01-01T00:00:00Z.
inline constexpr std::int64_t kZipTimestampFloor = 315532800;

struct RuleProfile {
    ProfileName name{ProfileName::Default};
    std::set<std::string> enabled_rule_ids;
    std::int64_t fixed_timestamp{kZipTimestampFloor};
    int recursion_depth_limit{3};
    /// Sort manifest attribute keys as well as list values.
    bool sort_manifest_keys{true};

    [[nodiscard]] auto Enabled(std::string_view rule_id) const -> bool;
};

/// Builds the named profile from catalog membership. Throws
/// Error{InvalidProfile} when fixed_timestamp is below kZipTimestampFloor.
[[nodiscard]] auto MakeProfile(ProfileName name,
                               std::int64_t fixed_timestamp = kZipTimestampFloor)
    -> RuleProfile;

/// Throws Error{InvalidProfile} for unknown rule ids, a timestamp below the
/// floor or a negative recursion limit.
void ValidateProfile(RuleProfile const& profile);

/// SOURCE_DATE_EPOCH when it is set to an integer at or above the floor.
[[nodiscard]] auto TimestampFromEnvironment() -> std::optional<std::int64_t>;

/// The full rule catalog in stable order.
[[nodiscard]] auto ListRules() -> std::vector<Rule> const&;

[[nodiscard]] auto FindRule(std::string_view id) -> Rule const*;

/// True iff the profile enables a transform rule covering the cause.
[[nodiscard]] auto ProfileCovers(RuleProfile const& profile,
                                 TaxonomyCause const& cause) -> bool;

/// JSON array of {id, kind, cause, covers, mitigation, profiles, description}.
[[nodiscard]] auto RulesToJson() -> std::string;

/// One rule per line, tab separated.
[[nodiscard]] auto RulesToText() -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_RULES_HPP
