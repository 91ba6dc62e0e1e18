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

#include "canon/rules.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

#include "canon/error.hpp"
#include "canon/paths.hpp"
#include "canon/text.hpp"
#include "json.hpp"

namespace canon {
namespace {

using R = Reason;

auto Any() -> RulePredicate {
    return [](std::string_view, std::string_view) { return true; };
}

auto Manifest() -> RulePredicate {
    return [](std::string_view path, std::string_view) {
        return IsManifestPath(path);
    };
}

auto Classfile() -> RulePredicate {
    return [](std::string_view path, std::string_view) {
        return IsClassfilePath(path) and not IsModuleInfo(path);
    };
}

auto Sbom() -> RulePredicate {
    return [](std::string_view path, std::string_view payload) {
        return IsSbomCandidate(path, payload);
    };
}

auto PomProperties() -> RulePredicate {
    return [](std::string_view path, std::string_view) {
        return IsPomProperties(path);
    };
}

auto Nested() -> RulePredicate {
    return [](std::string_view, std::string_view payload) {
        return payload.size() >= 2 and
               ((payload[0] == 'P' and payload[1] == 'K') or
                (payload[0] == '\x1F' and payload[1] == '\x8B') or
                (payload.size() >= 262 and payload.substr(257, 5) == "ustar"));
    };
}

auto TextEntry() -> RulePredicate {
    return [](std::string_view path, std::string_view payload) {
        return LooksLikeText(path, payload);
    };
}

auto AllProfiles() -> std::vector<ProfileName> {
    return {ProfileName::ArchiveOnly, ProfileName::Default,
            ProfileName::Aggressive};
}

auto FromDefault() -> std::vector<ProfileName> {
    return {ProfileName::Default, ProfileName::Aggressive};
}

auto AggressiveOnly() -> std::vector<ProfileName> {
    return {ProfileName::Aggressive};
}

auto C(Reason r, char const* root, char const* fine) -> TaxonomyCause {
    return CatalogCause(r, root, fine);
}

auto Transform(std::string id, TaxonomyCause cause,
               std::vector<TaxonomyCause> covers, RuleKind kind,
               RulePredicate applies_to, std::vector<ProfileName> profiles,
               std::string description) -> Rule {
    return Rule{std::move(id),       std::move(cause),
                std::move(covers),   Mitigation::CanonicalizeByRebuilder,
                kind,                std::move(applies_to),
                std::move(profiles), std::move(description)};
}

auto Slug(std::string_view s) -> std::string {
    auto cut = s.find(',');
    s = s.substr(0, cut);
    std::string out;
    for (auto c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
            out.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        else if (not out.empty() and out.back() != '-') {
            out.push_back('-');
        }
    }
    while (not out.empty() and out.back() == '-') {
        out.pop_back();
    }
    return out;
}

auto BuildRules() -> std::vector<Rule> {
    auto const order = C(R::Filesystem, "Environment", "Order of files");
    auto const mtime = C(R::Filesystem, "Environment", "File timestamps");
    auto const size = C(R::Filesystem, "Environment", "Size");
    auto const owner = C(R::Filesystem, "Environment", "Ownership");
    auto const perms = C(R::Filesystem, "Environment", "Permissions");
    auto const abs_paths = C(R::Filesystem, "Environment", "Absolute Paths");
    auto const built_by = C(R::BuildManifest, "Environment", "Built-By");
    auto const os_version = C(R::BuildManifest, "Environment", "Os-Version");
    auto const signed_jars = C(R::BuildManifest, "Environment", "Signed JARs");
    auto const eclipse =
        C(R::BuildManifest, "Environment", "Eclipse Properties");
    auto const prop_order = C(R::BuildManifest,
                              "Inconsistent Build Configuration",
                              "Order of properties and their values");
    auto const pom_timestamp = C(R::BuildManifest, "Dynamic Properties",
                                 "pom.properties timestamp");
    auto const member_order = C(R::JvmBytecode, "JDK Version", "Member order");
    auto const debug_info =
        C(R::JvmBytecode, "JDK Version", "Debug information");

    std::vector<TaxonomyCause> repo_state;
    for (auto const& row : TaxonomyCatalog()) {
        if (row.cause.reason == R::VersioningProperties) {
            repo_state.push_back(row.cause);
        }
    }

    std::vector<Rule> rules;
    auto add = [&rules](Rule r) { rules.push_back(std::move(r)); };
    using K = RuleKind;

    // Generic container stabilizers.
    add(Transform("archive.entry-order", order, {order}, K::ArchiveMetadata,
                  Any(), AllProfiles(),
                  "Sort entries by byte-lexicographic path."));
    add(Transform("archive.mtime", mtime, {mtime}, K::ArchiveMetadata, Any(),
                  AllProfiles(), "Set every entry mtime to the fixed timestamp."));
    add(Transform("archive.compression", size, {}, K::ArchiveMetadata, Any(),
                  AllProfiles(), "Store every entry uncompressed."));
    add(Transform("archive.ownership", owner, {owner}, K::ArchiveMetadata,
                  Any(), AllProfiles(),
                  "Clear owner and group names and numeric ids."));
    add(Transform("archive.permissions", perms, {perms}, K::ArchiveMetadata,
                  Any(), AllProfiles(),
                  "Map modes to 0644, or 0755 for directories and executables."));
    add(Transform("archive.extra-fields", mtime, {}, K::ArchiveMetadata,
                  Any(), AllProfiles(), "Drop ZIP extra fields."));
    add(Transform("archive.zip-comment", size, {}, K::ArchiveMetadata, Any(),
                  AllProfiles(), "Drop ZIP archive and entry comments."));
    add(Transform("archive.gzip-header", mtime, {mtime}, K::ArchiveMetadata,
                  Any(), AllProfiles(),
                  "Zero gzip MTIME, OS and XFL; drop FNAME, FCOMMENT, FEXTRA."));
    add(Transform("archive.nested", order, {}, K::EntryContent, Nested(),
                  AllProfiles(),
                  "Recursively stabilize nested archives up to the depth limit."));

    // Build manifest.
    add(Transform("manifest.built-by", built_by, {built_by}, K::EntryContent,
                  Manifest(), FromDefault(), "Remove Built-By."));
    add(Transform("manifest.os-version", os_version, {os_version},
                  K::EntryContent, Manifest(), FromDefault(),
                  "Remove Os-Version."));
    add(Transform("manifest.entry-digests", signed_jars, {signed_jars},
                  K::EntryContent, Manifest(), FromDefault(),
                  "Remove per-entry *-Digest attributes."));
    add(Transform("manifest.signature-files", signed_jars, {signed_jars},
                  K::EntryRemoval,
                  [](std::string_view path, std::string_view) {
                      return IsSignatureFile(path);
                  },
                  FromDefault(), "Remove META-INF signature files."));
    add(Transform("manifest.value-order", prop_order, {prop_order},
                  K::EntryContent, Manifest(), FromDefault(),
                  "Sort comma-separated values of OSGi list headers."));
    add(Transform("manifest.attribute-order", prop_order, {prop_order},
                  K::EntryContent, Manifest(), FromDefault(),
                  "Sort attributes within sections and sections by Name."));
    add(Transform("properties.canonical", prop_order,
                  {prop_order, pom_timestamp}, K::EntryContent,
                  PomProperties(), FromDefault(),
                  "Drop comments and sort keys of pom.properties."));
    add(Transform("properties.eclipse", eclipse, {eclipse}, K::EntryContent,
                  PomProperties(), FromDefault(),
                  "Drop m2e.* keys from pom.properties."));

    // Versioning properties.
    add(Transform("versioning.git-properties", repo_state.front(), repo_state,
                  K::EntryRemoval,
                  [](std::string_view path, std::string_view) {
                      return IsGitProperties(path);
                  },
                  FromDefault(), "Remove git.properties and git.json."));
    add(Transform("versioning.pom-properties", prop_order,
                  {prop_order, pom_timestamp, eclipse}, K::EntryRemoval,
                  PomProperties(), FromDefault(),
                  "Remove META-INF/maven/**/pom.properties."));

    // SBOM.
    add(Transform("sbom.serial-number",
                  C(R::Sbom, "Dynamic Properties", "SerialNumber"),
                  {C(R::Sbom, "Dynamic Properties", "SerialNumber")},
                  K::EntryContent, Sbom(), FromDefault(),
                  "Delete serialNumber."));
    add(Transform("sbom.timestamp",
                  C(R::Sbom, "Dynamic Properties", "Timestamp"),
                  {C(R::Sbom, "Dynamic Properties", "Timestamp")},
                  K::EntryContent, Sbom(), FromDefault(),
                  "Delete metadata.timestamp."));
    add(Transform("sbom.licenses", C(R::Sbom, "External Metadata", "License"),
                  {C(R::Sbom, "External Metadata", "License")},
                  K::EntryContent, Sbom(), FromDefault(),
                  "Delete component licenses."));
    add(Transform("sbom.description",
                  C(R::Sbom, "External Metadata", "Description of components"),
                  {C(R::Sbom, "External Metadata", "Description of components")},
                  K::EntryContent, Sbom(), FromDefault(),
                  "Delete component descriptions."));
    add(Transform("sbom.external-references",
                  C(R::Sbom, "External Metadata", "ExternalReferences"),
                  {C(R::Sbom, "External Metadata", "ExternalReferences")},
                  K::EntryContent, Sbom(), FromDefault(),
                  "Delete component externalReferences."));

    // Classfiles and plain files.
    add(Transform("classfile.constant-pool",
                  C(R::JvmBytecode, "Generated Code", "Java Compiler"),
                  {C(R::JvmBytecode, "Generated Code", "Java Compiler")},
                  K::EntryContent, Classfile(), FromDefault(),
                  "Rebuild the constant pool in first-use order."));
    add(Transform("filesystem.line-endings", size, {size}, K::EntryContent,
                  TextEntry(), FromDefault(),
                  "Convert CRLF to LF in text entries."));
    add(Transform("filesystem.absolute-paths", abs_paths, {abs_paths},
                  K::EntryPath, Any(), FromDefault(),
                  "Strip leading '/' and './' from entry paths."));

    // Aggressive: erase attributes whose proper fix lies in the build.
    struct Attr {
        char const* id;
        char const* root;
        char const* fine;
        char const* text;
    };
    for (auto const& a : std::initializer_list<Attr>{
             {"manifest.build-jdk", "Rebuild Process", "Build-Jdk",
              "Remove Build-Jdk and Build-Jdk-Spec."},
             {"manifest.created-by", "Rebuild Process", "Created-By",
              "Remove Created-By."},
             {"manifest.originally-created-by", "Rebuild Process",
              "Originally-Created-By", "Remove Originally-Created-By."},
             {"manifest.implementation-build-java-vendor", "Rebuild Process",
              "Implementation-Build-Java-Vendor",
              "Remove Implementation-Build-Java-Vendor."},
             {"manifest.scm-revision", "Rebuild Process", "SCM-Revision",
              "Remove SCM-Revision."},
             {"manifest.scm-git-branch", "Dynamic Properties",
              "SCM-Git-Branch", "Remove SCM-Git-Branch."},
             {"manifest.bnd-lastmodified", "Dynamic Properties",
              "Bnd-LastModified", "Remove Bnd-LastModified."},
         }) {
        auto cause = C(R::BuildManifest, a.root, a.fine);
        add(Transform(a.id, cause, {cause}, K::EntryContent, Manifest(),
                      AggressiveOnly(), a.text));
    }
    add(Transform("classfile.member-order", member_order, {member_order},
                  K::EntryContent, Classfile(), AggressiveOnly(),
                  "Sort fields and methods by name and descriptor."));
    add(Transform("classfile.debug-attributes", debug_info, {debug_info},
                  K::EntryContent, Classfile(), AggressiveOnly(),
                  "Strip SourceFile, SourceDebugExtension, LineNumberTable, "
                  "LocalVariableTable and LocalVariableTypeTable."));
    add(Transform("classfile.inner-classes-order", member_order,
                  {member_order}, K::EntryContent, Classfile(),
                  AggressiveOnly(), "Sort InnerClasses entries."));
    add(Transform("classfile.module-info",
                  C(R::JvmBytecode, "Embedded Metadata",
                    "Absolute file paths, timestamps, Java/project version, "
                    "Git properties, usernames"),
                  {}, K::EntryRemoval,
                  [](std::string_view path, std::string_view) {
                      return IsModuleInfo(path);
                  },
                  AggressiveOnly(), "Remove module-info.class."));
    add(Transform("classfile.annotation-arrays", member_order, {},
                  K::EntryContent, Classfile(), {},
                  "Sort array-valued annotation elements. Opt-in only."));

    // Identity rules for rows whose mitigation lies outside the rebuilder.
    for (auto const& row : TaxonomyCatalog()) {
        if (row.mitigation == Mitigation::CanonicalizeByRebuilder) {
            continue;
        }
        add(Rule{"classify." + ToLowerAscii(ToString(row.cause.reason)) + "." +
                     Slug(row.cause.fine_grained),
                 row.cause,
                 {},
                 row.mitigation,
                 K::Classifier,
                 Any(),
                 AllProfiles(),
                 "Label only: " + row.cause.root_cause + " / " +
                     row.cause.fine_grained + "."});
    }
    return rules;
}

auto CauseJson(TaxonomyCause const& c) -> nlohmann::json {
    return {{"reason", ToString(c.reason)},
            {"root_cause", c.root_cause},
            {"fine_grained", c.fine_grained}};
}

}  // namespace

auto ToString(ProfileName name) noexcept -> std::string_view {
    switch (name) {
        case ProfileName::ArchiveOnly:
            return "archive";
        case ProfileName::Default:
            return "default";
        case ProfileName::Aggressive:
            return "aggressive";
    }
    return "default";
}

auto ParseProfileName(std::string_view s) -> std::optional<ProfileName> {
    auto lower = ToLowerAscii(s);
    if (lower == "archive" or lower == "archive-only" or
        lower == "archiveonly") {
        return ProfileName::ArchiveOnly;
    }
    if (lower == "default") {
        return ProfileName::Default;
    }
    if (lower == "aggressive") {
        return ProfileName::Aggressive;
    }
    return std::nullopt;
}

auto ToString(RuleKind kind) noexcept -> std::string_view {
    switch (kind) {
        case RuleKind::ArchiveMetadata:
            return "ArchiveMetadata";
        case RuleKind::EntryRemoval:
            return "EntryRemoval";
        case RuleKind::EntryContent:
            return "EntryContent";
        case RuleKind::EntryPath:
            return "EntryPath";
        case RuleKind::Classifier:
            return "Classifier";
    }
    return "Classifier";
}

auto RuleProfile::Enabled(std::string_view rule_id) const -> bool {
    return enabled_rule_ids.find(std::string{rule_id}) !=
           enabled_rule_ids.end();
}

auto MakeProfile(ProfileName name, std::int64_t fixed_timestamp)
    -> RuleProfile {
    RuleProfile profile;
    profile.name = name;
    profile.fixed_timestamp = fixed_timestamp;
    for (auto const& rule : ListRules()) {
        if (std::find(rule.profiles.begin(), rule.profiles.end(), name) !=
            rule.profiles.end()) {
            profile.enabled_rule_ids.insert(rule.id);
        }
    }
    ValidateProfile(profile);
    return profile;
}

void ValidateProfile(RuleProfile const& profile) {
    if (profile.fixed_timestamp < kZipTimestampFloor) {
        throw Error{ErrorCode::InvalidProfile,
                    "fixed_timestamp " +
                        std::to_string(profile.fixed_timestamp) +
                        " is below 315532800"};
    }
    if (profile.recursion_depth_limit < 0) {
        throw Error{ErrorCode::InvalidProfile,
                    "negative recursion_depth_limit"};
    }
    for (auto const& id : profile.enabled_rule_ids) {
        if (FindRule(id) == nullptr) {
            throw Error{ErrorCode::InvalidProfile, "unknown rule id " + id};
        }
    }
}

auto TimestampFromEnvironment() -> std::optional<std::int64_t> {
    auto const* raw = std::getenv("SOURCE_DATE_EPOCH");
    if (raw == nullptr) {
        return std::nullopt;
    }
    std::string_view s{raw};
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} or end != s.data() + s.size() or
        value < kZipTimestampFloor) {
        return std::nullopt;
    }
    return value;
}

auto ListRules() -> std::vector<Rule> const& {
    static auto const kRules = BuildRules();
    return kRules;
}

auto FindRule(std::string_view id) -> Rule const* {
    for (auto const& rule : ListRules()) {
        if (rule.id == id) {
            return &rule;
        }
    }
    return nullptr;
}

auto ProfileCovers(RuleProfile const& profile, TaxonomyCause const& cause)
    -> bool {
    for (auto const& rule : ListRules()) {
        if (rule.kind == RuleKind::Classifier or not profile.Enabled(rule.id)) {
            continue;
        }
        if (std::find(rule.covers.begin(), rule.covers.end(), cause) !=
            rule.covers.end()) {
            return true;
        }
    }
    return false;
}

auto RulesToJson() -> std::string {
    auto out = nlohmann::json::array();
    for (auto const& rule : ListRules()) {
        auto covers = nlohmann::json::array();
        for (auto const& c : rule.covers) {
            covers.push_back(CauseJson(c));
        }
        auto profiles = nlohmann::json::array();
        for (auto p : rule.profiles) {
            profiles.push_back(ToString(p));
        }
        out.push_back({{"id", rule.id},
                       {"kind", ToString(rule.kind)},
                       {"cause", CauseJson(rule.cause)},
                       {"covers", covers},
                       {"mitigation", ToString(rule.mitigation)},
                       {"profiles", profiles},
                       {"description", rule.description}});
    }
    return out.dump(2) + "\n";
}

auto RulesToText() -> std::string {
    std::string out;
    for (auto const& rule : ListRules()) {
        std::string profiles;
        for (auto p : rule.profiles) {
            if (not profiles.empty()) {
                profiles += ",";
            }
            profiles += ToString(p);
        }
        if (profiles.empty()) {
            profiles = "opt-in";
        }
        out += rule.id + "\t" + ToString(rule.cause) + "\t" +
               std::string{ToString(rule.mitigation)} + "\t" + profiles + "\n";
    }
    return out;
}

}  // namespace canon
