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

#include "canon/diff.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <utility>

#include "canon/archive.hpp"
#include "canon/classfile.hpp"
#include "canon/digest.hpp"
#include "canon/error.hpp"
#include "canon/paths.hpp"
#include "canon/text.hpp"
#include "canon/text_diff.hpp"
#include "json.hpp"

namespace canon {

namespace {

// Annotation lines emitted by the differ and matched by the classifier.
constexpr std::string_view kEntryOrder = "# entry order";
constexpr std::string_view kEncoding = "# encoding";
constexpr std::string_view kContainerType = "# container type";
constexpr std::string_view kPoolOrder = "# constant-pool order";
constexpr std::string_view kMemberOrder = "# member order";
constexpr std::string_view kDebugAttributes = "# debug attributes";
constexpr std::string_view kOtherClassfile = "# code or attributes";

auto JoinPath(std::string_view parent, std::string_view child) -> std::string {
    if (parent.empty()) {
        return std::string{child};
    }
    return std::string{parent} + "/" + std::string{child};
}

auto Hex(std::string_view data) -> std::string {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (unsigned char c : data) {
        out.push_back(kDigits[c >> 4]);
        out.push_back(kDigits[c & 0xF]);
    }
    return out;
}

auto Octal(unsigned value) -> std::string {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04o", value);
    return buf;
}

auto SizeAndDigest(std::string_view bytes) -> std::string {
    return "size " + std::to_string(bytes.size()) + " sha256 " +
           Sha256Hex(bytes);
}

void AddFieldDelta(std::string* out, std::string_view field,
                   std::string const& a, std::string const& b) {
    if (a == b) {
        return;
    }
    *out += "-" + std::string{field} + ": " + a + "\n";
    *out += "+" + std::string{field} + ": " + b + "\n";
}

auto EntryType(Entry const& e) -> std::string {
    if (e.is_directory) {
        return "directory";
    }
    if (not e.link_target.empty()) {
        return (e.hard_link ? "hardlink -> " : "symlink -> ") + e.link_target;
    }
    return "file";
}

auto ExtraSummary(std::vector<ExtraField> const& extras) -> std::string {
    std::string out;
    for (auto const& x : extras) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "0x%04x", x.tag);
        if (not out.empty()) {
            out += " ";
        }
        out += std::string{buf} + "=" + Hex(x.data);
    }
    return out.empty() ? "(none)" : out;
}

auto EntryMetadataDelta(Entry const& a, Entry const& b) -> std::string {
    std::string out;
    AddFieldDelta(&out, "mtime", std::to_string(a.mtime),
                  std::to_string(b.mtime));
    AddFieldDelta(&out, "mode", Octal(a.unix_mode), Octal(b.unix_mode));
    AddFieldDelta(&out, "owner", a.owner_user + ":" + a.owner_group,
                  b.owner_user + ":" + b.owner_group);
    AddFieldDelta(&out, "uid", std::to_string(a.uid), std::to_string(b.uid));
    AddFieldDelta(&out, "gid", std::to_string(a.gid), std::to_string(b.gid));
    auto compression = [](Compression c) {
        return std::string{c == Compression::Store ? "store" : "deflate"};
    };
    AddFieldDelta(&out, "compression", compression(a.compression),
                  compression(b.compression));
    AddFieldDelta(&out, "extra", ExtraSummary(a.extra_fields),
                  ExtraSummary(b.extra_fields));
    AddFieldDelta(&out, "type", EntryType(a), EntryType(b));
    AddFieldDelta(&out, "comment", a.comment, b.comment);
    return out;
}

auto TrailerDelta(Archive const& a, Archive const& b) -> std::string {
    std::string out;
    AddFieldDelta(&out, "zip.comment", a.trailer.zip_comment,
                  b.trailer.zip_comment);
    if (a.format == FormatKind::Gzip) {
        auto const& ga = a.trailer.gzip;
        auto const& gb = b.trailer.gzip;
        AddFieldDelta(&out, "gzip.mtime", std::to_string(ga.mtime),
                      std::to_string(gb.mtime));
        AddFieldDelta(&out, "gzip.os", std::to_string(ga.os),
                      std::to_string(gb.os));
        AddFieldDelta(&out, "gzip.xfl", std::to_string(ga.xfl),
                      std::to_string(gb.xfl));
        AddFieldDelta(&out, "gzip.name", ga.file_name, gb.file_name);
        AddFieldDelta(&out, "gzip.comment", ga.comment, gb.comment);
        AddFieldDelta(&out, "gzip.extra", Hex(ga.extra), Hex(gb.extra));
    }
    return out;
}

// Manifests are compared with continuation lines joined, so a value that
// moves across the 72-byte fold shows up as one changed attribute.
auto UnfoldManifest(std::string_view text) -> std::string {
    std::vector<std::string> lines;
    for (auto line : SplitLinesKeepEnds(text)) {
        if (not line.empty() and line.front() == ' ' and not lines.empty()) {
            auto& prev = lines.back();
            while (not prev.empty() and
                   (prev.back() == '\n' or prev.back() == '\r')) {
                prev.pop_back();
            }
            prev += std::string{line.substr(1)};
            continue;
        }
        lines.emplace_back(line);
    }
    std::string out;
    for (auto const& l : lines) {
        out += l;
    }
    return out;
}

auto IsDebugAttribute(std::string_view name) -> bool {
    return name == "SourceFile" or name == "SourceDebugExtension" or
           name == "LineNumberTable" or name == "LocalVariableTable" or
           name == "LocalVariableTypeTable";
}

using MemberKey = std::pair<std::string, std::string>;

auto MemberKeys(std::vector<MemberInfo> const& members)
    -> std::vector<MemberKey> {
    std::vector<MemberKey> keys;
    keys.reserve(members.size());
    for (auto const& m : members) {
        keys.emplace_back(m.name, m.descriptor);
    }
    return keys;
}

auto MemberOrderDiffers(std::vector<MemberInfo> const& a,
                        std::vector<MemberInfo> const& b) -> bool {
    auto ka = MemberKeys(a);
    auto kb = MemberKeys(b);
    if (ka == kb) {
        return false;
    }
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

// Debug attributes keyed by owner, so member order does not matter.
auto DebugAttributes(ClassFile const& cf)
    -> std::map<std::string, std::vector<AttributeInfo>> {
    std::map<std::string, std::vector<AttributeInfo>> out;
    auto collect = [&](std::string const& owner,
                       std::vector<AttributeInfo> const& attrs) {
        for (auto const& a : attrs) {
            if (IsDebugAttribute(a.name)) {
                out[owner].push_back(a);
            }
        }
    };
    collect("class", cf.attributes);
    for (auto const* list : {&cf.fields, &cf.methods}) {
        for (auto const& m : *list) {
            auto owner = m.name + m.descriptor;
            collect(owner, m.attributes);
            if (m.code) {
                collect(owner + " Code", m.code->attributes);
            }
        }
    }
    return out;
}

auto ClassfileSummary(std::string_view a, std::string_view b)
    -> std::optional<std::string> {
    ClassFile ca;
    ClassFile cb;
    try {
        ca = ParseClassfile(a);
        cb = ParseClassfile(b);
    } catch (Error const&) {
        return std::nullopt;
    }
    std::string notes;
    auto const render_a = RenderClassfile(ca);
    auto const render_b = RenderClassfile(cb);
    if (ca == cb or render_a == render_b) {
        notes += std::string{kPoolOrder} + "\n";
    }
    bool const members_moved = MemberOrderDiffers(ca.fields, cb.fields) or
                               MemberOrderDiffers(ca.methods, cb.methods);
    if (members_moved) {
        notes += std::string{kMemberOrder} + "\n";
    }
    bool const debug_changed = DebugAttributes(ca) != DebugAttributes(cb);
    if (debug_changed) {
        notes += std::string{kDebugAttributes} + "\n";
    }
    // Anything left once order and debug information are normalized away.
    bool other = false;
    if (ca.unrelocatable.empty() and cb.unrelocatable.empty()) {
        ClassfileOptions options{};
        options.sort_inner_classes = false;
        other = CanonicalizeClassfile(ca, options) !=
                CanonicalizeClassfile(cb, options);
    } else {
        other = not members_moved and not debug_changed and
                render_a != render_b;
    }
    if (other) {
        notes += std::string{kOtherClassfile} + "\n";
    }
    return notes + FormatHunks(UnifiedTextDiff(render_a, render_b));
}

class Differ {
  public:
    explicit Differ(std::vector<std::string>* notes) : notes_{notes} {}

    auto Blobs(std::string const& path, std::string_view a,
               std::string_view b, int depth) -> std::optional<DiffNode> {
        if (a == b) {
            return std::nullopt;
        }
        auto const fa = DetectFormat(a);
        auto const fb = DetectFormat(b);
        if (depth > 0 and fa == fb and fa != FormatKind::Opaque) {
            if (auto node = Containers(path, a, b, depth)) {
                return node;
            }
        }
        if (fa != fb and
            (fa != FormatKind::Opaque or fb != FormatKind::Opaque)) {
            return Opaque(path, a, b,
                          std::string{kContainerType} + "\n-" +
                              std::string{ToString(fa)} + "\n+" +
                              std::string{ToString(fb)} + "\n");
        }
        // A bare top-level artifact has no path to go by.
        auto const bare_class = path.empty() and HasClassMagic(a) and HasClassMagic(b);
        if (IsClassfilePath(path) or bare_class) {
            if (auto summary = ClassfileSummary(a, b)) {
                DiffNode node;
                node.path = path;
                node.kind = NodeKind::ClassfileContent;
                node.unified_diff = std::move(*summary);
                return node;
            }
            Note(path, "classfile not parsed, compared as bytes");
        }
        if (LooksLikeText(path, a) and LooksLikeText(path, b)) {
            return Text(path, a, b);
        }
        return Opaque(path, a, b, {});
    }

  private:
    static auto HasClassMagic(std::string_view bytes) -> bool {
        return bytes.starts_with("\xCA\xFE\xBA\xBE");
    }

    void Note(std::string const& path, std::string const& what) {
        notes_->push_back((path.empty() ? "(artifact)" : path) + ": " + what);
    }

    static auto Opaque(std::string const& path, std::string_view a,
                       std::string_view b, std::string prefix) -> DiffNode {
        DiffNode node;
        node.path = path;
        node.kind = NodeKind::OpaqueBinary;
        node.unified_diff = std::move(prefix) + "-" + SizeAndDigest(a) +
                            "\n+" + SizeAndDigest(b) + "\n";
        return node;
    }

    static auto Text(std::string const& path, std::string_view a,
                     std::string_view b) -> DiffNode {
        std::vector<Hunk> hunks;
        if (IsManifestPath(path)) {
            auto ua = UnfoldManifest(a);
            auto ub = UnfoldManifest(b);
            if (ua != ub) {
                hunks = UnifiedTextDiff(ua, ub);
            }
        }
        if (hunks.empty()) {
            hunks = UnifiedTextDiff(a, b);
        }
        DiffNode node;
        node.path = path;
        node.kind = NodeKind::TextContent;
        node.unified_diff = FormatHunks(hunks);
        return node;
    }

    auto Containers(std::string const& path, std::string_view a,
                    std::string_view b, int depth) -> std::optional<DiffNode> {
        Archive aa;
        Archive ab;
        try {
            aa = ParseArchive(a);
        } catch (Error const& e) {
            Note(path, std::string{"reference not parsed: "} + e.what());
            return std::nullopt;
        }
        try {
            ab = ParseArchive(b);
        } catch (Error const& e) {
            Note(path, std::string{"rebuild not parsed: "} + e.what());
            return std::nullopt;
        }
        for (auto const& n : aa.notes) {
            Note(path, "reference: " + n);
        }
        for (auto const& n : ab.notes) {
            Note(path, "rebuild: " + n);
        }
        return Archives(path, aa, ab, a, b, depth);
    }

    // Entries are matched by path; repeated paths pair up by occurrence.
    using Key = std::pair<std::string, std::size_t>;

    static auto Keys(Archive const& archive) -> std::vector<Key> {
        std::map<std::string, std::size_t> seen;
        std::vector<Key> keys;
        keys.reserve(archive.entries.size());
        for (auto const& e : archive.entries) {
            keys.emplace_back(e.path, seen[e.path]++);
        }
        return keys;
    }

    auto Archives(std::string const& path, Archive const& aa,
                  Archive const& ab, std::string_view raw_a,
                  std::string_view raw_b, int depth) -> DiffNode {
        DiffNode node;
        node.path = path;
        node.kind = NodeKind::ArchiveMetadata;

        auto const keys_a = Keys(aa);
        auto const keys_b = Keys(ab);
        std::map<Key, std::size_t> index_b;
        for (std::size_t i = 0; i < keys_b.size(); ++i) {
            index_b[keys_b[i]] = i;
        }
        std::set<Key> const set_a(keys_a.begin(), keys_a.end());

        std::string own = TrailerDelta(aa, ab);
        std::string order_a;
        std::string order_b;
        for (auto const& k : keys_a) {
            if (index_b.count(k) != 0) {
                order_a += k.first + "\n";
            }
        }
        for (auto const& k : keys_b) {
            if (set_a.count(k) != 0) {
                order_b += k.first + "\n";
            }
        }
        if (order_a != order_b) {
            own += std::string{kEntryOrder} + "\n" +
                   FormatHunks(UnifiedTextDiff(order_a, order_b));
        }

        for (std::size_t i = 0; i < keys_a.size(); ++i) {
            auto const& ea = aa.entries[i];
            auto child_path = JoinPath(path, ea.path);
            auto it = index_b.find(keys_a[i]);
            if (it == index_b.end()) {
                node.children.push_back(Presence(child_path, '-'));
                continue;
            }
            auto const& eb = ab.entries[it->second];
            auto meta = EntryMetadataDelta(ea, eb);
            if (not meta.empty()) {
                DiffNode m;
                m.path = child_path;
                m.kind = NodeKind::EntryMetadata;
                m.unified_diff = std::move(meta);
                node.children.push_back(std::move(m));
            }
            if (auto content =
                    Blobs(child_path, ea.payload, eb.payload, depth - 1)) {
                node.children.push_back(std::move(*content));
            }
        }
        for (std::size_t i = 0; i < keys_b.size(); ++i) {
            if (set_a.count(keys_b[i]) == 0) {
                node.children.push_back(
                    Presence(JoinPath(path, ab.entries[i].path), '+'));
            }
        }
        // Same model, different bytes: compressed streams or header layout.
        if (own.empty() and node.children.empty()) {
            own = std::string{kEncoding} + "\n-" + SizeAndDigest(raw_a) +
                  "\n+" + SizeAndDigest(raw_b) + "\n";
        }
        if (not own.empty()) {
            node.unified_diff = std::move(own);
        }
        return node;
    }

    static auto Presence(std::string const& path, char side) -> DiffNode {
        DiffNode node;
        node.path = path;
        node.kind = NodeKind::EntryPresence;
        node.unified_diff = std::string(1, side) + "present: " + path + "\n";
        return node;
    }

    std::vector<std::string>* notes_;
};

// ---------------------------------------------------------------------------
// Classification

enum class Scope {
    Manifest,
    PomProperties,
    Properties,
    GitProperties,
    Sbom,
    OtherText,
    Classfile,
    EntryMetadata,
    Presence,
    Container,
    Opaque,
};

auto IsSbomPath(std::string_view path) -> bool {
    auto const name = ToLowerAscii(Basename(path));
    auto const ext = ExtensionOf(path);
    if (ext != ".json" and ext != ".xml") {
        return false;
    }
    return name.find("cyclonedx") != std::string::npos or
           name.find("bom") != std::string::npos or
           name.find(".cdx.") != std::string::npos or
           name.find(".spdx.") != std::string::npos;
}

auto ScopeOf(DiffNode const& node) -> Scope {
    switch (node.kind) {
        case NodeKind::ArchiveMetadata:
            return Scope::Container;
        case NodeKind::EntryPresence:
            return Scope::Presence;
        case NodeKind::EntryMetadata:
            return Scope::EntryMetadata;
        case NodeKind::ClassfileContent:
            return Scope::Classfile;
        case NodeKind::OpaqueBinary:
            return Scope::Opaque;
        case NodeKind::TextContent:
            break;
    }
    if (IsManifestPath(node.path)) {
        return Scope::Manifest;
    }
    if (IsPomProperties(node.path)) {
        return Scope::PomProperties;
    }
    if (IsGitProperties(node.path)) {
        return Scope::GitProperties;
    }
    if (IsSbomPath(node.path)) {
        return Scope::Sbom;
    }
    if (ExtensionOf(node.path) == ".properties") {
        return Scope::Properties;
    }
    return Scope::OtherText;
}

struct Pattern {
    std::vector<Scope> scopes;
    std::regex regex;
    std::vector<TaxonomyCause> causes;
};

auto Make(std::vector<Scope> scopes, char const* re,
          std::vector<TaxonomyCause> causes) -> Pattern {
    return Pattern{std::move(scopes),
                   std::regex{re, std::regex::ECMAScript | std::regex::icase},
                   std::move(causes)};
}

// Evaluated line by line against changed lines ('-'/'+') and annotations.
auto PatternTable() -> std::vector<Pattern> const& {
    static auto const table = [] {
        using R = Reason;
        auto bm = [](char const* root, char const* fine) {
            return CatalogCause(R::BuildManifest, root, fine);
        };
        auto fs = [](char const* root, char const* fine) {
            return CatalogCause(R::Filesystem, root, fine);
        };
        auto sb = [](char const* root, char const* fine) {
            return CatalogCause(R::Sbom, root, fine);
        };
        auto git = [](char const* fine) {
            return CatalogCause(R::VersioningProperties,
                                "Source Repository State", fine);
        };
        auto jvm = [](char const* root, char const* fine) {
            return CatalogCause(R::JvmBytecode, root, fine);
        };
        auto ts = [](char const* fine) {
            return CatalogCause(R::Timestamps, "Build-time Variability", fine);
        };
        auto const order = bm("Inconsistent Build Configuration",
                              "Order of properties and their values");
        auto const M = Scope::Manifest;
        auto const P = Scope::PomProperties;
        auto const G = Scope::GitProperties;
        auto const S = Scope::Sbom;
        std::vector<Pattern> t;
        t.push_back(Make({M}, R"(^[-+]Built-By:)",
                         {bm("Environment", "Built-By")}));
        t.push_back(Make({M}, R"(^[-+]Os-Version:)",
                         {bm("Environment", "Os-Version")}));
        t.push_back(Make({M}, R"(^[-+](Name|[A-Za-z0-9_-]+-Digest):)",
                         {bm("Environment", "Signed JARs")}));
        t.push_back(Make({M}, R"(^[-+]Build-Jdk(-Spec)?:)",
                         {bm("Rebuild Process", "Build-Jdk")}));
        t.push_back(Make({M}, R"(^[-+]Created-By:)",
                         {bm("Rebuild Process", "Created-By")}));
        t.push_back(Make({M}, R"(^[-+]Originally-Created-By:)",
                         {bm("Rebuild Process", "Originally-Created-By")}));
        t.push_back(
            Make({M}, R"(^[-+]Implementation-Build-Java-Vendor:)",
                 {bm("Rebuild Process", "Implementation-Build-Java-Vendor")}));
        t.push_back(Make({M}, R"(^[-+](Implementation-)?SCM-Revision:)",
                         {bm("Rebuild Process", "SCM-Revision")}));
        t.push_back(Make({M}, R"(^[-+]SCM-Git-Branch:)",
                         {bm("Dynamic Properties", "SCM-Git-Branch")}));
        t.push_back(Make({M}, R"(^[-+]Bnd-LastModified:)",
                         {bm("Dynamic Properties", "Bnd-LastModified")}));
        t.push_back(Make(
            {M},
            R"(^[-+](Export-Package|Import-Package|Include-Resource|Private-Package|Provide-Capability|Require-Capability):)",
            {order}));
        t.push_back(Make({P}, R"(^[-+]#.*\d\d:\d\d:\d\d)",
                         {bm("Dynamic Properties", "pom.properties timestamp")}));
        t.push_back(Make({P, Scope::Properties, M}, R"(^[-+]\s*m2e\.)",
                         {bm("Environment", "Eclipse Properties")}));
        t.push_back(Make({G}, R"(^[-+]\s*"?git\.tags)",
                         {git("Number of Git tags")}));
        t.push_back(Make(
            {G}, R"(^[-+]\s*"?git\.(total\.commit\.count|closest\.tag\.commit\.count|closest\.tag\.name))",
            {git("Number of commits")}));
        t.push_back(Make({G}, R"(^[-+]\s*"?git\.branch)",
                         {git("Branch name")}));
        t.push_back(Make({G}, R"(^[-+]\s*"?git\.local\.branch)",
                         {git("Local branch name")}));
        t.push_back(Make({G}, R"(^[-+]\s*"?git\.commit\.time)",
                         {git("Timezone of commit")}));
        t.push_back(Make({G}, R"(^[-+]\s*"?git\.remote\.origin\.url)",
                         {git("Remote URL")}));
        t.push_back(Make({G}, R"(^[-+]\s*"?git\.build\.time)",
                         {ts("Build manifest")}));
        t.push_back(Make({S}, R"(^[-+].*(serialNumber|urn:uuid))",
                         {sb("Dynamic Properties", "SerialNumber")}));
        t.push_back(Make({S}, R"(^[-+]\s*("timestamp"|<timestamp>))",
                         {sb("Dynamic Properties", "Timestamp")}));
        t.push_back(Make({S}, R"(^[-+].*licen[cs]e)",
                         {sb("External Metadata", "License")}));
        t.push_back(
            Make({S}, R"(^[-+]\s*("description"|<description>))",
                 {sb("External Metadata", "Description of components")}));
        t.push_back(Make({S}, R"(^[-+].*(externalReferences|<reference |"url"))",
                         {sb("External Metadata", "ExternalReferences")}));
        t.push_back(Make({S}, R"(^-\s*("alg"|<hash alg=))",
                         {sb("Java Vendor", "Removal of hash algorithms")}));
        t.push_back(Make({Scope::Classfile}, R"(^# constant-pool order)",
                         {jvm("Generated Code", "Java Compiler")}));
        t.push_back(Make({Scope::Classfile}, R"(^# member order)",
                         {jvm("JDK Version", "Member order")}));
        t.push_back(Make({Scope::Classfile}, R"(^# debug attributes)",
                         {jvm("JDK Version", "Debug information")}));
        t.push_back(Make({Scope::EntryMetadata}, R"(^[-+]mtime:)",
                         {fs("Environment", "File timestamps"),
                          ts("File metadata")}));
        t.push_back(Make({Scope::EntryMetadata}, R"(^[-+]mode:)",
                         {fs("Environment", "Permissions")}));
        t.push_back(Make({Scope::EntryMetadata}, R"(^[-+](owner|uid|gid):)",
                         {fs("Environment", "Ownership")}));
        t.push_back(Make({Scope::EntryMetadata}, R"(^[-+]compression:)",
                         {fs("Environment", "Size")}));
        t.push_back(Make({Scope::EntryMetadata}, R"(^[-+]extra:)",
                         {fs("Environment", "File timestamps")}));
        t.push_back(Make({Scope::EntryMetadata}, R"(^[-+]type:)",
                         {fs("Inconsistent Build Configuration", "Type")}));
        t.push_back(
            Make({Scope::Presence}, R"(^[-+]present:)",
                 {fs("Inconsistent Build Configuration", "Files removed or added")}));
        t.push_back(Make({Scope::Presence}, R"(^[-+]present: \.?/)",
                         {fs("Environment", "Absolute Paths")}));
        t.push_back(Make(
            {Scope::Presence},
            R"(^[-+]present: META-INF/([^/]+\.(SF|RSA|DSA|EC)|SIG-[^/]*)$)",
            {bm("Environment", "Signed JARs")}));
        t.push_back(Make({Scope::Container}, R"(^# entry order)",
                         {fs("Environment", "Order of files")}));
        t.push_back(Make({Scope::Container}, R"(^[-+]gzip\.mtime:)",
                         {fs("Environment", "File timestamps"),
                          ts("File metadata")}));
        t.push_back(Make({Scope::Container}, R"(^# encoding)",
                         {fs("Environment", "Size")}));
        t.push_back(Make({Scope::Opaque}, R"(^# container type)",
                         {fs("Inconsistent Build Configuration", "Type")}));
        return t;
    }();
    return table;
}

auto TimestampRegex() -> std::regex const& {
    static std::regex const re{
        R"(\d{4}-\d{2}-\d{2}[T ]\d{2}:\d{2}:\d{2})"
        R"(|\b1\d{12}\b)"
        R"(|[A-Z][a-z]{2} [A-Z][a-z]{2} [ 0-9]\d \d{2}:\d{2}:\d{2} [A-Z]{2,5} \d{4})",
        std::regex::ECMAScript};
    return re;
}

auto IsChangedLine(std::string_view line) -> bool {
    return not line.empty() and (line.front() == '-' or line.front() == '+');
}

auto StripEol(std::string_view s) -> std::string_view {
    while (not s.empty() and (s.back() == '\n' or s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

// The timestamp fine-grained cause follows the file type that embeds it.
auto TimestampCauses(Scope scope, std::string_view path)
    -> std::vector<TaxonomyCause> {
    auto ts = [](char const* fine) {
        return CatalogCause(Reason::Timestamps, "Build-time Variability", fine);
    };
    switch (scope) {
        case Scope::Classfile:
            return {ts("JVM bytecode"),
                    CatalogCause(Reason::JvmBytecode, "Embedded Metadata",
                                 "Absolute file paths, timestamps, "
                                 "Java/project version, Git properties, "
                                 "usernames")};
        case Scope::Manifest:
        case Scope::PomProperties:
        case Scope::Properties:
            return {ts("Build manifest")};
        case Scope::OtherText:
            break;
        default:
            return {};
    }
    auto const ext = ExtensionOf(path);
    if (ext == ".sh" or ext == ".bat" or ext == ".cmd" or ext == ".ps1") {
        return {ts("Shell scripts")};
    }
    if (path.rfind("META-INF/", 0) == 0 or path.find("/META-INF/") !=
                                               std::string_view::npos) {
        return {ts("Build manifest")};
    }
    return {ts("Documentation")};
}

auto OwnCauses(DiffNode const& node) -> std::vector<TaxonomyCause> {
    std::set<TaxonomyCause> causes;
    if (not node.unified_diff) {
        return {};
    }
    auto const scope = ScopeOf(node);
    std::vector<std::string_view> minus;
    std::vector<std::string_view> plus;
    std::vector<std::string_view> raw_minus;  // terminators kept
    std::vector<std::string_view> raw_plus;
    bool timestamp = false;
    for (auto raw : SplitLinesKeepEnds(*node.unified_diff)) {
        auto const line = StripEol(raw);
        bool const annotation = not line.empty() and line.front() == '#';
        if (not IsChangedLine(line) and not annotation) {
            continue;
        }
        std::string const s{line};
        for (auto const& p : PatternTable()) {
            if (std::find(p.scopes.begin(), p.scopes.end(), scope) !=
                    p.scopes.end() and
                std::regex_search(s, p.regex)) {
                causes.insert(p.causes.begin(), p.causes.end());
            }
        }
        if (IsChangedLine(line)) {
            if (std::regex_search(s, TimestampRegex())) {
                timestamp = true;
            }
            (line.front() == '-' ? minus : plus).push_back(line.substr(1));
            (line.front() == '-' ? raw_minus : raw_plus)
                .push_back(raw.substr(1));
        }
    }
    if (timestamp) {
        for (auto const& c : TimestampCauses(scope, node.path)) {
            causes.insert(c);
        }
    }
    bool const text_scope = node.kind == NodeKind::TextContent;
    if (text_scope and not minus.empty()) {
        // Same lines in a different order.
        auto sa = minus;
        auto sb = plus;
        auto drop_comments = [&](std::vector<std::string_view>* v) {
            if (scope == Scope::PomProperties or scope == Scope::Properties) {
                v->erase(std::remove_if(v->begin(), v->end(),
                                        [](std::string_view l) {
                                            return not l.empty() and
                                                   l.front() == '#';
                                        }),
                         v->end());
            }
        };
        drop_comments(&sa);
        drop_comments(&sb);
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (not sa.empty() and sa == sb and
            (scope == Scope::Manifest or scope == Scope::PomProperties or
             scope == Scope::Properties)) {
            causes.insert(CatalogCause(Reason::BuildManifest,
                                       "Inconsistent Build Configuration",
                                       "Order of properties and their values"));
        }
        // Line endings only.
        auto strip_cr = [](std::vector<std::string_view> v) {
            std::vector<std::string> out;
            for (auto l : v) {
                std::string s{l};
                s.erase(std::remove(s.begin(), s.end(), '\r'), s.end());
                out.push_back(std::move(s));
            }
            return out;
        };
        if (raw_minus.size() == raw_plus.size() and raw_minus != raw_plus and
            strip_cr(raw_minus) == strip_cr(raw_plus)) {
            causes.insert(
                CatalogCause(Reason::Filesystem, "Environment", "Size"));
        }
    }
    if (scope == Scope::Sbom) {
        auto mentions_component = [](std::vector<std::string_view> const& v) {
            return std::any_of(v.begin(), v.end(), [](std::string_view l) {
                return l.find("\"purl\"") != std::string_view::npos or
                       l.find("<purl>") != std::string_view::npos or
                       l.find("bom-ref") != std::string_view::npos;
            });
        };
        bool const removed = mentions_component(minus);
        bool const added = mentions_component(plus);
        char const* fine = removed and added ? "Modification of components"
                           : removed         ? "Removal of components"
                           : added           ? "Addition of components"
                                             : nullptr;
        if (fine != nullptr) {
            causes.insert(CatalogCause(
                Reason::Sbom, "Inconsistent Build Configuration", fine));
        }
    }
    if (scope == Scope::Classfile and node.unified_diff->find(kOtherClassfile) !=
                                          std::string::npos and
        not timestamp) {
        causes.insert(CatalogCause(Reason::JvmBytecode, "JDK Version",
                                   "Optimization and de-optimization"));
    }
    return {causes.begin(), causes.end()};
}

void ClassifyNode(DiffNode* node) {
    std::set<TaxonomyCause> all;
    for (auto& child : node->children) {
        ClassifyNode(&child);
        all.insert(child.causes.begin(), child.causes.end());
    }
    node->own_causes = OwnCauses(*node);
    if (node->own_causes.empty() and
        (node->children.empty() or node->unified_diff)) {
        node->own_causes.push_back(UnknownCause());
    }
    all.insert(node->own_causes.begin(), node->own_causes.end());
    node->causes.assign(all.begin(), all.end());
}

void CountOwn(DiffNode const& node, std::map<TaxonomyCause, std::size_t>* out) {
    for (auto const& c : node.own_causes) {
        ++(*out)[c];
    }
    for (auto const& child : node.children) {
        CountOwn(child, out);
    }
}

void CollectLeafCauses(DiffNode const& node, std::set<TaxonomyCause>* out) {
    if (node.children.empty()) {
        out->insert(node.causes.begin(), node.causes.end());
    }
    for (auto const& child : node.children) {
        CollectLeafCauses(child, out);
    }
}

auto CountTree(DiffNode const& node) -> std::size_t {
    std::size_t n = 1;
    for (auto const& child : node.children) {
        n += CountTree(child);
    }
    return n;
}

auto CauseJson(TaxonomyCause const& c) -> nlohmann::json {
    return {{"reason", ToString(c.reason)},
            {"root_cause", c.root_cause},
            {"fine_grained", c.fine_grained}};
}

auto NodeJson(DiffNode const& node) -> nlohmann::json {
    auto causes = nlohmann::json::array();
    for (auto const& c : node.causes) {
        causes.push_back(CauseJson(c));
    }
    auto children = nlohmann::json::array();
    for (auto const& child : node.children) {
        children.push_back(NodeJson(child));
    }
    nlohmann::json j;
    j["path"] = node.path;
    j["kind"] = ToString(node.kind);
    j["causes"] = std::move(causes);
    j["unified_diff"] = node.unified_diff
                            ? nlohmann::json(*node.unified_diff)
                            : nlohmann::json(nullptr);
    j["children"] = std::move(children);
    return j;
}

void NodeText(DiffNode const& node, std::size_t indent, std::string* out) {
    std::string const pad(indent, ' ');
    *out += pad + (node.path.empty() ? "(artifact)" : node.path) + " [" +
            std::string{ToString(node.kind)} + "]\n";
    for (auto const& c : node.own_causes) {
        *out += pad + "  cause: " + ToString(c) + "\n";
    }
    if (node.unified_diff) {
        for (auto line : SplitLinesKeepEnds(*node.unified_diff)) {
            *out += pad + "  | " + std::string{StripEol(line)} + "\n";
        }
    }
    for (auto const& child : node.children) {
        NodeText(child, indent + 2, out);
    }
}

}  // namespace

auto ToString(NodeKind kind) noexcept -> std::string_view {
    switch (kind) {
        case NodeKind::ArchiveMetadata:
            return "ArchiveMetadata";
        case NodeKind::EntryPresence:
            return "EntryPresence";
        case NodeKind::EntryMetadata:
            return "EntryMetadata";
        case NodeKind::TextContent:
            return "TextContent";
        case NodeKind::ClassfileContent:
            return "ClassfileContent";
        case NodeKind::OpaqueBinary:
            return "OpaqueBinary";
    }
    return "OpaqueBinary";
}

auto DiffArtifacts(std::string_view reference, std::string_view rebuild,
                   int depth) -> DiffReport {
    DiffReport report;
    report.reference_digest = Sha256Hex(reference);
    report.rebuild_digest = Sha256Hex(rebuild);
    Differ differ{&report.notes};
    report.root = differ.Blobs("", reference, rebuild, std::max(depth, 0));
    return report;
}

auto Classify(DiffReport report) -> DiffReport {
    report.stats.clear();
    if (not report.root) {
        return report;
    }
    ClassifyNode(&*report.root);
    std::map<TaxonomyCause, std::size_t> counts;
    CountOwn(*report.root, &counts);
    for (auto const& [cause, count] : counts) {
        report.stats.push_back(CauseCount{cause, count});
    }
    return report;
}

auto LeafCauses(DiffReport const& report) -> std::vector<TaxonomyCause> {
    std::set<TaxonomyCause> out;
    if (report.root) {
        CollectLeafCauses(*report.root, &out);
    }
    return {out.begin(), out.end()};
}

auto CountNodes(DiffReport const& report) -> std::size_t {
    return report.root ? CountTree(*report.root) : 0;
}

auto ReportToJson(DiffReport const& report) -> std::string {
    nlohmann::json j;
    j["reference_digest"] = report.reference_digest;
    j["rebuild_digest"] = report.rebuild_digest;
    j["nodes"] = nlohmann::json::array();
    if (report.root) {
        j["nodes"].push_back(NodeJson(*report.root));
    }
    auto stats = nlohmann::json::array();
    for (auto const& s : report.stats) {
        auto c = CauseJson(s.cause);
        c["count"] = s.count;
        stats.push_back(std::move(c));
    }
    j["stats"] = std::move(stats);
    j["notes"] = report.notes;
    return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) +
           "\n";
}

auto ReportToText(DiffReport const& report) -> std::string {
    std::string out = "reference sha256 " + report.reference_digest + "\n" +
                      "rebuild   sha256 " + report.rebuild_digest + "\n";
    if (not report.root) {
        return out + "identical\n";
    }
    NodeText(*report.root, 0, &out);
    for (auto const& n : report.notes) {
        out += "note: " + n + "\n";
    }
    for (auto const& s : report.stats) {
        out += std::to_string(s.count) + "\t" + ToString(s.cause) + "\n";
    }
    return out;
}

}  // namespace canon
