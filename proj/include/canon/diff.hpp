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

#ifndef INCLUDED_CANON_DIFF_HPP
#define INCLUDED_CANON_DIFF_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canon/taxonomy.hpp"

namespace canon {

enum class NodeKind {
    ArchiveMetadata,
    EntryPresence,
    EntryMetadata,
    TextContent,
    ClassfileContent,
    OpaqueBinary,
};

[[nodiscard]] auto ToString(NodeKind kind) noexcept -> std::string_view;

/// One difference. Container nodes (ArchiveMetadata) hold per-entry
/// children and may carry their own container-level diff. Every node's
/// `unified_diff` uses '-' for the reference side and '+' for the rebuild.
/// Lines starting with '#' are annotations, not content.
struct DiffNode {
    std::string path;
    NodeKind kind{NodeKind::OpaqueBinary};
    std::optional<std::string> unified_diff;
    /// Union of own causes and all child causes, sorted.
    std::vector<TaxonomyCause> causes;
    /// Causes matched on this node's own diff.
    std::vector<TaxonomyCause> own_causes;
    std::vector<DiffNode> children;
};

struct CauseCount {
    TaxonomyCause cause;
    std::size_t count{0};

    auto operator==(CauseCount const&) const -> bool = default;
};

struct DiffReport {
    std::string reference_digest;  // SHA-256, lowercase hex
    std::string rebuild_digest;
    std::optional<DiffNode> root;  // absent iff the inputs are identical
    /// Own causes counted over all nodes, sorted by cause.
    std::vector<CauseCount> stats;
    /// Parser observations, e.g. fallback to opaque comparison.
    std::vector<std::string> notes;
};

/// Recursive comparison. `depth` is the number of container levels to
/// expand; 0 compares the inputs as plain files. Never throws for malformed
/// input: unparsable containers are compared as opaque bytes.
[[nodiscard]] auto DiffArtifacts(std::string_view reference,
                                 std::string_view rebuild, int depth)
    -> DiffReport;

/// Labels every node from the pattern table and recomputes stats. Every
/// leaf ends up with at least one cause.
[[nodiscard]] auto Classify(DiffReport report) -> DiffReport;

/// All causes carried by leaf nodes, deduplicated and sorted.
[[nodiscard]] auto LeafCauses(DiffReport const& report)
    -> std::vector<TaxonomyCause>;

/// Number of nodes in the tree.
[[nodiscard]] auto CountNodes(DiffReport const& report) -> std::size_t;

[[nodiscard]] auto ReportToJson(DiffReport const& report) -> std::string;

/// Indented tree with diffs, for terminals.
[[nodiscard]] auto ReportToText(DiffReport const& report) -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_DIFF_HPP
