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

#ifndef INCLUDED_CANON_TAXONOMY_HPP
#define INCLUDED_CANON_TAXONOMY_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace canon {

enum class Reason {
    BuildManifest,
    Sbom,
    Filesystem,
    JvmBytecode,
    VersioningProperties,
    Timestamps,
    Unknown,
};

[[nodiscard]] auto ToString(Reason reason) noexcept -> std::string_view;
[[nodiscard]] auto ReasonFromString(std::string_view s) -> std::optional<Reason>;

enum class Mitigation {
    CanonicalizeByRebuilder,
    FixBuildProcess,
    FixRebuildProcess,
};

[[nodiscard]] auto ToString(Mitigation mitigation) noexcept -> std::string_view;

/// (reason, root cause, fine-grained cause). Apart from Unknown, triples come
/// from the closed catalog returned by TaxonomyCatalog().
struct TaxonomyCause {
    Reason reason{Reason::Unknown};
    std::string root_cause;
    std::string fine_grained;

    auto operator<=>(TaxonomyCause const&) const = default;
    auto operator==(TaxonomyCause const&) const -> bool = default;
};

[[nodiscard]] auto ToString(TaxonomyCause const& cause) -> std::string;

struct CatalogRow {
    TaxonomyCause cause;
    Mitigation mitigation;
};

/// Every known cause with its main mitigation, in a stable order.
[[nodiscard]] auto TaxonomyCatalog() -> std::vector<CatalogRow> const&;

/// nullptr for causes outside the catalog (including all Unknown causes).
[[nodiscard]] auto FindCatalogRow(TaxonomyCause const& cause)
    -> CatalogRow const*;

/// Looks up a catalog cause by triple; throws std::logic_error when absent,
/// which catches typos in rule and pattern tables.
[[nodiscard]] auto CatalogCause(Reason reason, std::string_view root_cause,
                                std::string_view fine_grained)
    -> TaxonomyCause;

[[nodiscard]] auto UnknownCause(std::string fine_grained = "Unclassified")
    -> TaxonomyCause;

}  // namespace canon

#endif  // INCLUDED_CANON_TAXONOMY_HPP
