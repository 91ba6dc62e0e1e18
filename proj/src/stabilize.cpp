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

#include "canon/stabilize.hpp"

#include <algorithm>
#include <set>

#include "canon/error.hpp"
#include "canon/manifest.hpp"
#include "canon/paths.hpp"
#include "canon/properties.hpp"
#include "canon/text.hpp"

namespace canon {
namespace {

constexpr std::uint16_t kTypeMask = 0170000;
constexpr std::uint16_t kSymlinkType = 0120000;

auto HasDebugAttributes(ClassFile const& cf) -> bool {
    auto debug = [](std::vector<AttributeInfo> const& attrs) {
        return std::any_of(attrs.begin(), attrs.end(), [](auto const& a) {
            return a.name == "SourceFile" or a.name == "SourceDebugExtension" or
                   a.name == "LineNumberTable" or
                   a.name == "LocalVariableTable" or
                   a.name == "LocalVariableTypeTable";
        });
    };
    if (debug(cf.attributes)) {
        return true;
    }
    return std::any_of(cf.methods.begin(), cf.methods.end(), [&](auto const& m) {
        return m.code and debug(m.code->attributes);
    });
}

class Stabilizer {
  public:
    explicit Stabilizer(RuleProfile const& profile) : profile_{profile} {}

    auto Run(Archive archive, int depth, std::string const& prefix) -> Archive {
        RemoveEntries(&archive);
        for (auto& entry : archive.entries) {
            if (not entry.is_directory) {
                RewriteContent(&entry, depth, prefix);
            }
        }
        RewritePaths(&archive);
        NormalizeMetadata(&archive);
        if (Enabled("archive.entry-order")) {
            auto before = archive.entries;
            std::stable_sort(archive.entries.begin(), archive.entries.end(),
                             [](Entry const& a, Entry const& b) {
                                 return a.path < b.path;
                             });
            if (before != archive.entries) {
                Applied("archive.entry-order");
            }
        }
        archive.notes.clear();
        return archive;
    }

    auto Finish(Archive archive) -> StabilizeResult {
        StabilizeResult result;
        result.archive = std::move(archive);
        for (auto const& rule : ListRules()) {
            if (applied_.count(rule.id) != 0) {
                result.applied_rule_ids.push_back(rule.id);
            }
        }
        result.flags = std::move(flags_);
        return result;
    }

  private:
    RuleProfile const& profile_;
    std::set<std::string> applied_;
    std::vector<std::string> flags_;

    [[nodiscard]] auto Enabled(std::string_view id) const -> bool {
        return profile_.Enabled(id);
    }

    void Applied(std::string id) { applied_.insert(std::move(id)); }

    void Flag(std::string const& prefix, std::string const& path,
              std::string const& why) {
        flags_.push_back(prefix + path + ": " + why);
    }

    void RemoveEntries(Archive* archive) {
        std::erase_if(archive->entries, [this](Entry const& e) {
            if (e.is_directory) {
                return false;
            }
            char const* rule = nullptr;
            if (IsSignatureFile(e.path)) {
                rule = "manifest.signature-files";
            }
            else if (IsGitProperties(e.path)) {
                rule = "versioning.git-properties";
            }
            else if (IsPomProperties(e.path)) {
                rule = "versioning.pom-properties";
            }
            else if (IsModuleInfo(e.path)) {
                rule = "classfile.module-info";
            }
            if (rule != nullptr and Enabled(rule)) {
                Applied(rule);
                return true;
            }
            return false;
        });
    }

    [[nodiscard]] auto AnyEnabled(std::string_view prefix) const -> bool {
        return std::any_of(profile_.enabled_rule_ids.begin(),
                           profile_.enabled_rule_ids.end(),
                           [prefix](std::string const& id) {
                               return id.rfind(prefix, 0) == 0;
                           });
    }

    void RewriteContent(Entry* entry, int depth, std::string const& prefix) {
        auto const& path = entry->path;
        auto& payload = entry->payload;
        if (IsManifestPath(path)) {
            if (not AnyEnabled("manifest.")) {
                return;
            }
            try {
                auto result = CanonicalizeManifestDetailed(payload, profile_);
                for (auto& id : result.applied_rule_ids) {
                    Applied(std::move(id));
                }
                for (auto const& f : result.flags) {
                    Flag(prefix, path, f);
                }
                payload = std::move(result.text);
            }
            catch (Error const& e) {
                Flag(prefix, path, e.what());
            }
            return;
        }
        if (IsPomProperties(path)) {
            PropertiesOptions options{Enabled("properties.canonical"),
                                      Enabled("properties.eclipse")};
            if (options.canonical or options.drop_eclipse_keys) {
                auto out = CanonicalizeProperties(payload, options);
                if (out != payload) {
                    Applied(options.canonical ? "properties.canonical"
                                              : "properties.eclipse");
                    payload = std::move(out);
                }
            }
            return;
        }
        if (IsSbomCandidate(path, payload) and AnyEnabled("sbom.")) {
            try {
                auto out = CanonicalizeSbom(payload, SbomOptionsFor(profile_));
                if (out != payload) {
                    for (auto const* id :
                         {"sbom.serial-number", "sbom.timestamp",
                          "sbom.licenses", "sbom.description",
                          "sbom.external-references"}) {
                        if (Enabled(id)) {
                            Applied(id);
                        }
                    }
                    payload = std::move(out);
                }
            }
            catch (Error const& e) {
                Flag(prefix, path, e.what());
            }
            return;
        }
        if (IsClassfilePath(path)) {
            if (AnyEnabled("classfile.")) {
                RewriteClassfile(entry, prefix);
            }
            return;
        }
        if (DetectFormat(payload) != FormatKind::Opaque and
            Enabled("archive.nested")) {
            if (depth + 1 > profile_.recursion_depth_limit) {
                Flag(prefix, path,
                     std::string{ToString(ErrorCode::RecursionLimitExceeded)});
                return;
            }
            try {
                auto nested = ParseArchive(payload);
                auto out = WriteArchive(Run(std::move(nested), depth + 1,
                                            prefix + path + "!/"));
                if (out != payload) {
                    Applied("archive.nested");
                    payload = std::move(out);
                }
                return;
            }
            catch (Error const& e) {
                Flag(prefix, path, e.what());
            }
        }
        if (Enabled("filesystem.line-endings") and
            payload.find("\r\n") != std::string::npos and
            LooksLikeText(path, payload)) {
            std::string out;
            out.reserve(payload.size());
            for (std::size_t i = 0; i < payload.size(); ++i) {
                if (payload[i] == '\r' and i + 1 < payload.size() and
                    payload[i + 1] == '\n') {
                    continue;
                }
                out.push_back(payload[i]);
            }
            payload = std::move(out);
            Applied("filesystem.line-endings");
        }
    }

    void RewriteClassfile(Entry* entry, std::string const& prefix) {
        try {
            auto cf = ParseClassfile(entry->payload);
            auto options = ClassfileOptionsFor(profile_);
            auto canonical = CanonicalizeClassfile(cf, options);
            auto out = WriteClassfile(canonical);
            if (out == entry->payload) {
                return;
            }
            if (Enabled("classfile.constant-pool")) {
                Applied("classfile.constant-pool");
            }
            if (options.sort_members and
                (canonical.fields != cf.fields or
                 canonical.methods != cf.methods)) {
                Applied("classfile.member-order");
            }
            if (options.strip_debug and HasDebugAttributes(cf)) {
                Applied("classfile.debug-attributes");
            }
            entry->payload = std::move(out);
        }
        catch (Error const& e) {
            Flag(prefix, entry->path, e.what());
        }
    }

    void RewritePaths(Archive* archive) {
        if (not Enabled("filesystem.absolute-paths")) {
            return;
        }
        std::set<std::string> taken;
        for (auto const& e : archive->entries) {
            taken.insert(e.path);
        }
        for (auto& e : archive->entries) {
            std::string_view p = e.path;
            while (true) {
                if (p.rfind("./", 0) == 0) {
                    p.remove_prefix(2);
                }
                else if (p.rfind('/', 0) == 0) {
                    p.remove_prefix(1);
                }
                else {
                    break;
                }
            }
            if (p.size() == e.path.size() or p.empty() or
                taken.count(std::string{p}) != 0) {
                continue;
            }
            std::string stripped{p};
            taken.erase(e.path);
            taken.insert(stripped);
            e.path = std::move(stripped);
            Applied("filesystem.absolute-paths");
        }
    }

    void Set(bool enabled, char const* rule, auto* field, auto value) {
        if (enabled and *field != value) {
            *field = value;
            Applied(rule);
        }
    }

    void NormalizeMetadata(Archive* archive) {
        bool const gzip = archive->format == FormatKind::Gzip;
        for (auto& e : archive->entries) {
            Set(Enabled("archive.compression"), "archive.compression",
                &e.compression, Compression::Store);
            if (gzip) {
                continue;
            }
            Set(Enabled("archive.mtime"), "archive.mtime", &e.mtime,
                profile_.fixed_timestamp);
            bool const owner = Enabled("archive.ownership");
            Set(owner, "archive.ownership", &e.owner_user, std::string{});
            Set(owner, "archive.ownership", &e.owner_group, std::string{});
            Set(owner, "archive.ownership", &e.uid, std::uint32_t{0});
            Set(owner, "archive.ownership", &e.gid, std::uint32_t{0});
            if (Enabled("archive.permissions")) {
                std::uint16_t mode = 0644;
                if ((e.unix_mode & kTypeMask) == kSymlinkType or
                    (not e.link_target.empty() and not e.hard_link)) {
                    mode = (e.unix_mode & kTypeMask) | 0777;
                }
                else if (e.is_directory or (e.unix_mode & 0111) != 0) {
                    mode = 0755;
                }
                Set(true, "archive.permissions", &e.unix_mode, mode);
            }
            Set(Enabled("archive.extra-fields"), "archive.extra-fields",
                &e.extra_fields, std::vector<ExtraField>{});
            Set(Enabled("archive.zip-comment"), "archive.zip-comment",
                &e.comment, std::string{});
        }
        Set(Enabled("archive.zip-comment"), "archive.zip-comment",
            &archive->trailer.zip_comment, std::string{});
        if (gzip and Enabled("archive.gzip-header")) {
            GzipHeader zeroed;
            zeroed.os = 0;
            Set(true, "archive.gzip-header", &archive->trailer.gzip, zeroed);
            for (auto& e : archive->entries) {
                Set(true, "archive.gzip-header", &e.path,
                    std::string{kGzipDefaultMember});
            }
        }
    }
};

}  // namespace

auto ClassfileOptionsFor(RuleProfile const& profile) -> ClassfileOptions {
    ClassfileOptions options;
    options.sort_members = profile.Enabled("classfile.member-order");
    options.strip_debug = profile.Enabled("classfile.debug-attributes");
    options.sort_inner_classes = profile.Enabled("classfile.inner-classes-order");
    options.sort_annotation_arrays =
        profile.Enabled("classfile.annotation-arrays");
    return options;
}

auto SbomOptionsFor(RuleProfile const& profile) -> SbomOptions {
    SbomOptions options;
    options.serial_number = profile.Enabled("sbom.serial-number");
    options.timestamp = profile.Enabled("sbom.timestamp");
    options.licenses = profile.Enabled("sbom.licenses");
    options.description = profile.Enabled("sbom.description");
    options.external_references = profile.Enabled("sbom.external-references");
    return options;
}

auto StabilizeArchiveDetailed(Archive archive, RuleProfile const& profile)
    -> StabilizeResult {
    ValidateProfile(profile);
    Stabilizer s{profile};
    auto out = s.Run(std::move(archive), 0, "");
    return s.Finish(std::move(out));
}

auto StabilizeArchive(Archive archive, RuleProfile const& profile) -> Archive {
    return StabilizeArchiveDetailed(std::move(archive), profile).archive;
}

auto StabilizeBytes(std::string_view bytes, RuleProfile const& profile)
    -> std::string {
    return WriteArchive(StabilizeArchive(ParseArchive(bytes), profile));
}

auto StripVersioningEntries(Archive archive) -> Archive {
    std::erase_if(archive.entries, [](Entry const& e) {
        return not e.is_directory and
               (IsGitProperties(e.path) or IsPomProperties(e.path));
    });
    return archive;
}

}  // namespace canon
