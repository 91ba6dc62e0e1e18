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

#include "canon/taxonomy.hpp"

#include <stdexcept>

namespace canon {
namespace {

constexpr auto kCanon = Mitigation::CanonicalizeByRebuilder;
constexpr auto kBuild = Mitigation::FixBuildProcess;
constexpr auto kRebuild = Mitigation::FixRebuildProcess;

auto Row(Reason r, char const* root, char const* fine, Mitigation m)
    -> CatalogRow {
    return CatalogRow{TaxonomyCause{r, root, fine}, m};
}

auto BuildCatalog() -> std::vector<CatalogRow> {
    using R = Reason;
    return {
        Row(R::BuildManifest, "Environment", "Built-By", kCanon),
        Row(R::BuildManifest, "Environment", "Signed JARs", kCanon),
        Row(R::BuildManifest, "Environment", "Os-Version", kCanon),
        Row(R::BuildManifest, "Environment", "Eclipse Properties", kCanon),
        Row(R::BuildManifest, "Rebuild Process",
            "Implementation-Build-Java-Vendor", kRebuild),
        Row(R::BuildManifest, "Rebuild Process", "Created-By", kRebuild),
        Row(R::BuildManifest, "Rebuild Process", "Originally-Created-By",
            kRebuild),
        Row(R::BuildManifest, "Rebuild Process", "SCM-Revision", kRebuild),
        Row(R::BuildManifest, "Rebuild Process", "Build-Jdk", kRebuild),
        Row(R::BuildManifest, "Dynamic Properties", "SCM-Git-Branch", kBuild),
        Row(R::BuildManifest, "Dynamic Properties", "Bnd-LastModified",
            kBuild),
        Row(R::BuildManifest, "Dynamic Properties", "pom.properties timestamp",
            kCanon),
        Row(R::BuildManifest, "Inconsistent Build Configuration",
            "Order of properties and their values", kCanon),

        Row(R::Sbom, "Java Vendor", "Removal of hash algorithms", kRebuild),
        Row(R::Sbom, "Inconsistent Build Configuration",
            "Addition of components", kBuild),
        Row(R::Sbom, "Inconsistent Build Configuration",
            "Removal of components", kBuild),
        Row(R::Sbom, "Inconsistent Build Configuration",
            "Modification of components", kBuild),
        Row(R::Sbom, "Dynamic Properties", "Timestamp", kCanon),
        Row(R::Sbom, "Dynamic Properties", "SerialNumber", kCanon),
        Row(R::Sbom, "External Metadata", "License", kCanon),
        Row(R::Sbom, "External Metadata", "Description of components",
            kCanon),
        Row(R::Sbom, "External Metadata", "ExternalReferences", kCanon),

        Row(R::Filesystem, "Environment", "Permissions", kCanon),
        Row(R::Filesystem, "Environment", "Ownership", kCanon),
        Row(R::Filesystem, "Environment", "Size", kCanon),
        Row(R::Filesystem, "Environment", "Absolute Paths", kCanon),
        Row(R::Filesystem, "Environment", "File timestamps", kCanon),
        Row(R::Filesystem, "Environment", "Order of files", kCanon),
        Row(R::Filesystem, "Inconsistent Build Configuration", "Type",
            kBuild),
        Row(R::Filesystem, "Inconsistent Build Configuration",
            "Files removed or added", kBuild),

        Row(R::JvmBytecode, "JDK Version", "Debug information", kBuild),
        Row(R::JvmBytecode, "JDK Version", "Optimization and de-optimization",
            kBuild),
        Row(R::JvmBytecode, "JDK Version", "Refactoring", kBuild),
        Row(R::JvmBytecode, "JDK Version", "Member order", kBuild),
        Row(R::JvmBytecode, "Embedded Metadata",
            "Absolute file paths, timestamps, Java/project version, Git "
            "properties, usernames",
            kBuild),
        Row(R::JvmBytecode, "Generated Code", "Java Compiler", kCanon),
        Row(R::JvmBytecode, "Generated Code", "Maven Plugins", kRebuild),

        Row(R::VersioningProperties, "Source Repository State",
            "Number of commits", kCanon),
        Row(R::VersioningProperties, "Source Repository State",
            "Number of Git tags", kCanon),
        Row(R::VersioningProperties, "Source Repository State",
            "Branch name", kCanon),
        Row(R::VersioningProperties, "Source Repository State",
            "Local branch name", kCanon),
        Row(R::VersioningProperties, "Source Repository State",
            "Timezone of commit", kCanon),
        Row(R::VersioningProperties, "Source Repository State", "Remote URL",
            kCanon),

        Row(R::Timestamps, "Build-time Variability", "Documentation", kBuild),
        Row(R::Timestamps, "Build-time Variability", "Shell scripts", kBuild),
        Row(R::Timestamps, "Build-time Variability", "Executable binaries",
            kBuild),
        Row(R::Timestamps, "Build-time Variability", "JVM bytecode", kBuild),
        Row(R::Timestamps, "Build-time Variability", "Build manifest", kBuild),
        Row(R::Timestamps, "Build-time Variability", "File metadata", kBuild),
    };
}

}  // namespace

auto ToString(Reason reason) noexcept -> std::string_view {
    switch (reason) {
        case Reason::BuildManifest:
            return "BuildManifest";
        case Reason::Sbom:
            return "Sbom";
        case Reason::Filesystem:
            return "Filesystem";
        case Reason::JvmBytecode:
            return "JvmBytecode";
        case Reason::VersioningProperties:
            return "VersioningProperties";
        case Reason::Timestamps:
            return "Timestamps";
        case Reason::Unknown:
            return "Unknown";
    }
    return "Unknown";
}

auto ReasonFromString(std::string_view s) -> std::optional<Reason> {
    for (auto r : {Reason::BuildManifest, Reason::Sbom, Reason::Filesystem,
                   Reason::JvmBytecode, Reason::VersioningProperties,
                   Reason::Timestamps, Reason::Unknown}) {
        if (ToString(r) == s) {
            return r;
        }
    }
    return std::nullopt;
}

auto ToString(Mitigation mitigation) noexcept -> std::string_view {
    switch (mitigation) {
        case Mitigation::CanonicalizeByRebuilder:
            return "CanonicalizeByRebuilder";
        case Mitigation::FixBuildProcess:
            return "FixBuildProcess";
        case Mitigation::FixRebuildProcess:
            return "FixRebuildProcess";
    }
    return "FixBuildProcess";
}

auto ToString(TaxonomyCause const& cause) -> std::string {
    return std::string{ToString(cause.reason)} + " / " + cause.root_cause +
           " / " + cause.fine_grained;
}

auto TaxonomyCatalog() -> std::vector<CatalogRow> const& {
    static auto const kCatalog = BuildCatalog();
    return kCatalog;
}

auto FindCatalogRow(TaxonomyCause const& cause) -> CatalogRow const* {
    for (auto const& row : TaxonomyCatalog()) {
        if (row.cause == cause) {
            return &row;
        }
    }
    return nullptr;
}

auto CatalogCause(Reason reason, std::string_view root_cause,
                  std::string_view fine_grained) -> TaxonomyCause {
    TaxonomyCause cause{reason, std::string{root_cause},
                        std::string{fine_grained}};
    if (FindCatalogRow(cause) == nullptr) {
        throw std::logic_error{"cause not in catalog: " + ToString(cause)};
    }
    return cause;
}

auto UnknownCause(std::string fine_grained) -> TaxonomyCause {
    return TaxonomyCause{Reason::Unknown, "Unknown", std::move(fine_grained)};
}

}  // namespace canon
