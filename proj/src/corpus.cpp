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

#include "canon/corpus.hpp"

#include <algorithm>
#include <ctime>
#include <functional>
#include <random>
#include <utility>

#include "canon/archive.hpp"
#include "canon/io.hpp"

namespace canon {

namespace {

using Rng = std::mt19937_64;

// Raw engine output only: distributions differ between standard libraries.
auto Below(Rng& rng, std::uint64_t n) -> std::uint64_t { return rng() % n; }

template <typename T>
auto Pick(Rng& rng, std::vector<T> const& v) -> T const& {
    return v[Below(rng, v.size())];
}

auto RandomHex(Rng& rng, std::size_t n) -> std::string {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s.push_back(kDigits[Below(rng, 16)]);
    }
    return s;
}

auto RandomBase64(Rng& rng, std::size_t n) -> std::string {
    static constexpr char kAlphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s.push_back(kAlphabet[Below(rng, 64)]);
    }
    return s;
}

auto RandomUuid(Rng& rng) -> std::string {
    return RandomHex(rng, 8) + "-" + RandomHex(rng, 4) + "-4" +
           RandomHex(rng, 3) + "-a" + RandomHex(rng, 3) + "-" +
           RandomHex(rng, 12);
}

auto FormatTime(std::int64_t t, char const* format) -> std::string {
    auto const tt = static_cast<std::time_t>(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[64];
    std::strftime(buf, sizeof buf, format, &tm);
    return buf;
}

// java.util.Date#toString as written into pom.properties.
auto JavaDate(std::int64_t t) -> std::string {
    return FormatTime(t, "%a %b %d %H:%M:%S UTC %Y");
}

auto IsoDate(std::int64_t t) -> std::string {
    return FormatTime(t, "%Y-%m-%dT%H:%M:%SZ");
}

// ---------------------------------------------------------------------------
// The demo class.

auto Utf8(std::string s) -> Constant {
    return Constant{ConstantTag::Utf8, std::move(s), {}, 0};
}

auto ClassRef(std::string name) -> Constant {
    return Constant{ConstantTag::Class, {}, {Utf8(std::move(name))}, 0};
}

auto MemberRef(ConstantTag tag, std::string owner, std::string name,
               std::string descriptor) -> Constant {
    Constant nat{ConstantTag::NameAndType,
                 {},
                 {Utf8(std::move(name)), Utf8(std::move(descriptor))},
                 0};
    return Constant{tag, {}, {ClassRef(std::move(owner)), std::move(nat)}, 0};
}

auto LineNumbers(int line) -> AttributeInfo {
    std::string body;
    body += '\0';
    body += '\1';  // one entry
    body += '\0';
    body += '\0';  // start_pc 0
    body += static_cast<char>((line >> 8) & 0xFF);
    body += static_cast<char>(line & 0xFF);
    return AttributeInfo{"LineNumberTable", body, {}};
}

auto Method(std::uint16_t flags, std::string name, std::string descriptor,
            std::uint16_t stack, std::uint16_t locals, std::string code,
            std::vector<PoolRef> refs, int line) -> MemberInfo {
    CodeBody body;
    body.max_stack = stack;
    body.max_locals = locals;
    body.code = std::move(code);
    body.code_refs = std::move(refs);
    body.attributes.push_back(LineNumbers(line));
    MemberInfo m;
    m.access_flags = flags;
    m.name = std::move(name);
    m.descriptor = std::move(descriptor);
    m.attributes.push_back(AttributeInfo{"Code", {}, {}});
    m.code = std::move(body);
    return m;
}

auto Bytes(std::initializer_list<unsigned> values) -> std::string {
    std::string s;
    for (auto v : values) {
        s.push_back(static_cast<char>(v));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Archive assembly.

constexpr char const* kManifest = "META-INF/MANIFEST.MF";
constexpr char const* kPomProperties =
    "META-INF/maven/com.example/demo/pom.properties";
constexpr char const* kClass = "com/example/Demo.class";
constexpr char const* kNotes = "docs/notes.txt";
constexpr char const* kSbom = "META-INF/sbom/application.cdx.json";

using Attributes = std::vector<std::pair<std::string, std::string>>;

auto ManifestText(Attributes const& attrs) -> std::string {
    std::string out;
    for (auto const& [k, v] : attrs) {
        std::string line = k + ": " + v;
        // 72-byte lines, continuations start with one space.
        std::size_t pos = 0;
        std::size_t width = 72;
        while (line.size() - pos > width) {
            out += line.substr(pos, width) + "\r\n ";
            pos += width;
            width = 71;
        }
        out += line.substr(pos) + "\r\n";
    }
    return out + "\r\n";
}

void Set(Attributes* attrs, std::string const& key, std::string value) {
    for (auto& [k, v] : *attrs) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    attrs->emplace_back(key, std::move(value));
}

struct Jar {
    Attributes manifest{{"Manifest-Version", "1.0"},
                        {"Created-By", "Maven JAR Plugin 3.3.0"},
                        {"Build-Jdk-Spec", "17"}};
    std::string trailing_sections;  // per-entry manifest sections
    std::vector<std::pair<std::string, std::string>> files;
    std::int64_t mtime{0};

    [[nodiscard]] auto Find(std::string const& path) -> std::string* {
        for (auto& [p, data] : files) {
            if (p == path) {
                return &data;
            }
        }
        return nullptr;
    }

    [[nodiscard]] auto ToArchive() const -> Archive {
        Archive a;
        a.format = FormatKind::Zip;
        auto add = [&](std::string path, std::string payload) {
            Entry e;
            e.path = std::move(path);
            e.payload = std::move(payload);
            e.mtime = mtime;
            e.unix_mode = 0644;
            e.compression = Compression::Deflate;
            a.entries.push_back(std::move(e));
        };
        auto manifest_text = ManifestText(manifest);
        if (not trailing_sections.empty()) {
            manifest_text += trailing_sections;
        }
        add(kManifest, manifest_text);
        for (auto const& [p, data] : files) {
            add(p, data);
        }
        return a;
    }
};

struct Context {
    Rng& rng;
    std::int64_t epoch;
};

auto PomProperties(std::string const& header) -> std::string {
    return header + "groupId=com.example\nartifactId=demo\nversion=1.0.0\n";
}

auto BaseJar(Context const& ctx) -> Jar {
    Jar jar;
    jar.mtime = ctx.epoch;
    jar.files = {
        {kPomProperties, PomProperties("#Generated by Maven\n")},
        {kClass, WriteClassfile(DemoClass())},
        {kNotes, "Demo library.\nSee the project site for usage.\n"},
    };
    return jar;
}

auto Sbom(std::string const& serial, std::string const& timestamp,
          std::string const& site,
          std::vector<std::string> const& extra_components) -> std::string {
    std::string components =
        "    {\n"
        "      \"type\": \"library\",\n"
        "      \"bom-ref\": \"pkg:maven/org.slf4j/slf4j-api@2.0.7?type=jar\",\n"
        "      \"group\": \"org.slf4j\",\n"
        "      \"name\": \"slf4j-api\",\n"
        "      \"version\": \"2.0.7\",\n"
        "      \"purl\": \"pkg:maven/org.slf4j/slf4j-api@2.0.7?type=jar\",\n"
        "      \"externalReferences\": [\n"
        "        {\n"
        "          \"type\": \"website\",\n"
        "          \"url\": \"" +
        site +
        "\"\n"
        "        }\n"
        "      ]\n"
        "    }";
    for (auto const& name : extra_components) {
        auto purl = "pkg:maven/org.example/" + name + "@1.0.0?type=jar";
        components += ",\n    {\n"
                      "      \"type\": \"library\",\n"
                      "      \"bom-ref\": \"" + purl + "\",\n"
                      "      \"group\": \"org.example\",\n"
                      "      \"name\": \"" + name + "\",\n"
                      "      \"version\": \"1.0.0\",\n"
                      "      \"purl\": \"" + purl + "\"\n"
                      "    }";
    }
    return "{\n"
           "  \"bomFormat\": \"CycloneDX\",\n"
           "  \"specVersion\": \"1.4\",\n"
           "  \"serialNumber\": \"urn:uuid:" + serial + "\",\n"
           "  \"version\": 1,\n"
           "  \"metadata\": {\n"
           "    \"timestamp\": \"" + timestamp + "\",\n"
           "    \"component\": {\n"
           "      \"type\": \"library\",\n"
           "      \"group\": \"com.example\",\n"
           "      \"name\": \"demo\",\n"
           "      \"version\": \"1.0.0\"\n"
           "    }\n"
           "  },\n"
           "  \"components\": [\n" + components + "\n  ]\n"
           "}\n";
}

auto GitProperties(std::string const& branch, std::string const& tags,
                   std::string const& commit) -> std::string {
    return "#Generated by Git-Commit-Id-Plugin\n"
           "git.branch=" + branch + "\n"
           "git.build.version=1.0.0\n"
           "git.commit.id=" + commit + "\n"
           "git.commit.id.abbrev=" + commit.substr(0, 7) + "\n"
           "git.dirty=false\n"
           "git.tags=" + tags + "\n";
}

auto Ustar(Context const& ctx, std::string const& user, std::uint32_t id)
    -> Archive {
    Archive a;
    a.format = FormatKind::Tar;
    auto add = [&](std::string path, std::string payload, std::uint16_t mode) {
        Entry e;
        e.path = std::move(path);
        e.is_directory = e.path.back() == '/';
        e.payload = std::move(payload);
        e.mtime = ctx.epoch;
        e.unix_mode = mode;
        e.owner_user = user;
        e.owner_group = user;
        e.uid = id;
        e.gid = id;
        a.entries.push_back(std::move(e));
    };
    add("demo-1.0.0/", "", 0755);
    add("demo-1.0.0/README.txt", "Demo distribution.\n", 0644);
    add("demo-1.0.0/bin/demo.sh", "#!/bin/sh\nexec java -jar demo.jar \"$@\"\n",
        0755);
    return a;
}

auto Gzip(std::string payload, std::int64_t mtime) -> Archive {
    Archive a;
    a.format = FormatKind::Gzip;
    a.trailer.gzip.mtime = mtime;
    a.trailer.gzip.os = 3;
    a.trailer.gzip.file_name = "demo-1.0.0.tar";
    Entry e;
    e.path = "demo-1.0.0.tar";
    e.payload = std::move(payload);
    e.compression = Compression::Deflate;
    a.entries.push_back(std::move(e));
    return a;
}

struct PairSpec {
    std::string id;
    TaxonomyCause cause;
    // Fills reference and rebuild bytes.
    std::function<std::pair<std::string, std::string>(Context const&)> make;
    std::string extension{"jar"};
};

auto FromJars(Jar const& ref, Jar const& reb)
    -> std::pair<std::string, std::string> {
    return {WriteArchive(ref.ToArchive()), WriteArchive(reb.ToArchive())};
}

// A manifest attribute with different values on the two sides.
auto ManifestPair(std::string key, std::vector<std::string> values)
    -> std::function<std::pair<std::string, std::string>(Context const&)> {
    return [key = std::move(key), values = std::move(values)](
               Context const& ctx) {
        auto ref = BaseJar(ctx);
        auto reb = ref;
        auto const i = Below(ctx.rng, values.size());
        auto const j = (i + 1 + Below(ctx.rng, values.size() - 1)) %
                       values.size();
        Set(&ref.manifest, key, values[i]);
        Set(&reb.manifest, key, values[j]);
        return FromJars(ref, reb);
    };
}

auto Specs() -> std::vector<PairSpec> {
    using R = Reason;
    auto bm = [](char const* root, char const* fine) {
        return CatalogCause(R::BuildManifest, root, fine);
    };
    auto fs = [](char const* root, char const* fine) {
        return CatalogCause(R::Filesystem, root, fine);
    };
    auto git = [](char const* fine) {
        return CatalogCause(R::VersioningProperties, "Source Repository State",
                            fine);
    };
    std::vector<PairSpec> specs;

    specs.push_back({"manifest-built-by", bm("Environment", "Built-By"),
                     [](Context const& ctx) {
                         auto ref = BaseJar(ctx);
                         auto reb = ref;
                         Set(&ref.manifest, "Built-By", "root");
                         Set(&reb.manifest, "Built-By",
                             Pick(ctx.rng, std::vector<std::string>{
                                               "aman", "builder", "jenkins",
                                               "runner"}));
                         return FromJars(ref, reb);
                     }});
    specs.push_back({"manifest-os-version", bm("Environment", "Os-Version"),
                     ManifestPair("Os-Version",
                                  {"5.15.0-1034-azure", "6.2.0-39-generic",
                                   "10.0", "13.4.1"})});
    specs.push_back(
        {"manifest-bnd-lastmodified",
         bm("Dynamic Properties", "Bnd-LastModified"), [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             auto const millis = ctx.epoch * 1000 + 123;
             Set(&ref.manifest, "Bnd-LastModified", std::to_string(millis));
             Set(&reb.manifest, "Bnd-LastModified",
                 std::to_string(millis + 86400000 +
                                static_cast<std::int64_t>(
                                    Below(ctx.rng, 1000000))));
             return FromJars(ref, reb);
         }});
    specs.push_back(
        {"manifest-export-package-order",
         bm("Inconsistent Build Configuration",
            "Order of properties and their values"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             std::vector<std::string> clauses{
                 "com.example.api;version=\"1.0.0\"",
                 "com.example.spi;uses:=\"com.example.api\";version=\"1.0.0\"",
                 "com.example.util;version=\"1.0.0\""};
             auto join = [](std::vector<std::string> const& v) {
                 std::string s;
                 for (auto const& c : v) {
                     s += (s.empty() ? "" : ",") + c;
                 }
                 return s;
             };
             Set(&ref.manifest, "Export-Package", join(clauses));
             std::rotate(clauses.begin(),
                         clauses.begin() + 1 +
                             static_cast<long>(Below(ctx.rng, 2)),
                         clauses.end());
             Set(&reb.manifest, "Export-Package", join(clauses));
             return FromJars(ref, reb);
         }});
    specs.push_back({"manifest-created-by", bm("Rebuild Process", "Created-By"),
                     ManifestPair("Created-By",
                                  {"Apache Maven 3.8.6", "Apache Maven 3.9.2",
                                   "Apache Maven 3.6.3"})});
    specs.push_back({"manifest-build-jdk", bm("Rebuild Process", "Build-Jdk"),
                     ManifestPair("Build-Jdk-Spec", {"11", "17", "21"})});
    specs.push_back(
        {"manifest-java-vendor",
         bm("Rebuild Process", "Implementation-Build-Java-Vendor"),
         ManifestPair("Implementation-Build-Java-Vendor",
                      {"Eclipse Adoptium", "Oracle Corporation",
                       "Azul Systems, Inc."})});
    specs.push_back({"manifest-scm-revision",
                     bm("Rebuild Process", "SCM-Revision"),
                     [](Context const& ctx) {
                         auto ref = BaseJar(ctx);
                         auto reb = ref;
                         Set(&ref.manifest, "SCM-Revision", RandomHex(ctx.rng, 40));
                         Set(&reb.manifest, "SCM-Revision", RandomHex(ctx.rng, 40));
                         return FromJars(ref, reb);
                     }});
    specs.push_back({"manifest-scm-git-branch",
                     bm("Dynamic Properties", "SCM-Git-Branch"),
                     ManifestPair("SCM-Git-Branch",
                                  {"main", "HEAD", "release/1.0"})});
    specs.push_back(
        {"signed-jar", bm("Environment", "Signed JARs"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             std::string sections;
             std::string sf = "Signature-Version: 1.0\r\nCreated-By: 17 "
                              "(Eclipse Adoptium)\r\nSHA-256-Digest-Manifest: " +
                              RandomBase64(ctx.rng, 43) + "=\r\n\r\n";
             for (auto const& [path, data] : ref.files) {
                 sections += "Name: " + path + "\r\nSHA-256-Digest: " +
                             RandomBase64(ctx.rng, 43) + "=\r\n\r\n";
                 sf += "Name: " + path + "\r\nSHA-256-Digest: " +
                       RandomBase64(ctx.rng, 43) + "=\r\n\r\n";
             }
             ref.trailing_sections = sections;
             std::string block;
             for (int i = 0; i < 256; ++i) {
                 block.push_back(static_cast<char>(Below(ctx.rng, 256)));
             }
             ref.files.emplace_back("META-INF/DEMO.SF", sf);
             ref.files.emplace_back("META-INF/DEMO.RSA", block);
             return FromJars(ref, reb);
         }});
    specs.push_back(
        {"pom-properties-order",
         bm("Inconsistent Build Configuration",
            "Order of properties and their values"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             *ref.Find(kPomProperties) =
                 "#Generated by Maven\n#" + JavaDate(ctx.epoch) +
                 "\ngroupId=com.example\nartifactId=demo\nversion=1.0.0\n";
             *reb.Find(kPomProperties) =
                 "#Generated by Maven\n#" +
                 JavaDate(ctx.epoch + 3600 +
                          static_cast<std::int64_t>(Below(ctx.rng, 86400))) +
                 "\nartifactId=demo\ngroupId=com.example\nversion=1.0.0\n";
             return FromJars(ref, reb);
         }});
    specs.push_back({"pom-properties-eclipse",
                     bm("Environment", "Eclipse Properties"),
                     [](Context const& ctx) {
                         auto ref = BaseJar(ctx);
                         auto reb = ref;
                         *reb.Find(kPomProperties) +=
                             "m2e.projectLocation=/home/" +
                             Pick(ctx.rng, std::vector<std::string>{
                                               "dev", "alice", "ci"}) +
                             "/workspace/demo\nm2e.projectName=demo\n";
                         return FromJars(ref, reb);
                     }});
    specs.push_back(
        {"sbom-serial-number",
         CatalogCause(R::Sbom, "Dynamic Properties", "SerialNumber"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             auto const site = std::string{"https://www.slf4j.org"};
             ref.files.emplace_back(
                 kSbom, Sbom(RandomUuid(ctx.rng), IsoDate(ctx.epoch), site, {}));
             reb.files.emplace_back(
                 kSbom, Sbom(RandomUuid(ctx.rng),
                             IsoDate(ctx.epoch + 7200 +
                                     static_cast<std::int64_t>(
                                         Below(ctx.rng, 86400))),
                             site, {}));
             return FromJars(ref, reb);
         }});
    specs.push_back(
        {"sbom-external-references",
         CatalogCause(R::Sbom, "External Metadata", "ExternalReferences"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             auto const serial = RandomUuid(ctx.rng);
             auto const ts = IsoDate(ctx.epoch);
             ref.files.emplace_back(
                 kSbom, Sbom(serial, ts, "https://www.slf4j.org", {}));
             reb.files.emplace_back(
                 kSbom, Sbom(serial, ts, "http://www.slf4j.org/", {}));
             return FromJars(ref, reb);
         }});
    specs.push_back(
        {"sbom-component-added",
         CatalogCause(R::Sbom, "Inconsistent Build Configuration",
                      "Addition of components"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             auto const serial = RandomUuid(ctx.rng);
             auto const ts = IsoDate(ctx.epoch);
             auto const site = std::string{"https://www.slf4j.org"};
             ref.files.emplace_back(kSbom, Sbom(serial, ts, site, {}));
             reb.files.emplace_back(
                 kSbom, Sbom(serial, ts, site,
                             {Pick(ctx.rng, std::vector<std::string>{
                                                "extra-lib", "shaded-util",
                                                "test-helper"})}));
             return FromJars(ref, reb);
         }});
    specs.push_back({"git-properties-tags", git("Number of Git tags"),
                     [](Context const& ctx) {
                         auto ref = BaseJar(ctx);
                         auto reb = ref;
                         auto const commit = RandomHex(ctx.rng, 40);
                         ref.files.emplace_back(
                             "git.properties", GitProperties("main", "", commit));
                         reb.files.emplace_back(
                             "git.properties",
                             GitProperties("main",
                                           "v1.0.0,v1.0." +
                                               std::to_string(Below(ctx.rng, 9) + 1),
                                           commit));
                         return FromJars(ref, reb);
                     }});
    specs.push_back({"git-properties-branch", git("Branch name"),
                     [](Context const& ctx) {
                         auto ref = BaseJar(ctx);
                         auto reb = ref;
                         auto const commit = RandomHex(ctx.rng, 40);
                         ref.files.emplace_back("git.properties",
                                                GitProperties("main", "v1.0.0", commit));
                         reb.files.emplace_back(
                             "git.properties",
                             GitProperties(Pick(ctx.rng, std::vector<std::string>{
                                                             "HEAD", "release-1.0",
                                                             "detached"}),
                                           "v1.0.0", commit));
                         return FromJars(ref, reb);
                     }});
    specs.push_back({"entry-mtime", fs("Environment", "File timestamps"),
                     [](Context const& ctx) {
                         auto ref = BaseJar(ctx);
                         auto a = ref.ToArchive();
                         auto b = a;
                         b.entries.back().mtime +=
                             2 * static_cast<std::int64_t>(1 + Below(ctx.rng, 40000));
                         return std::make_pair(WriteArchive(a), WriteArchive(b));
                     }});
    specs.push_back({"entry-permissions", fs("Environment", "Permissions"),
                     [](Context const& ctx) {
                         auto a = BaseJar(ctx).ToArchive();
                         auto b = a;
                         b.entries.back().unix_mode =
                             Pick(ctx.rng, std::vector<std::uint16_t>{0664, 0600,
                                                                      0640});
                         return std::make_pair(WriteArchive(a), WriteArchive(b));
                     }});
    specs.push_back({"entry-order", fs("Environment", "Order of files"),
                     [](Context const& ctx) {
                         auto a = BaseJar(ctx).ToArchive();
                         auto b = a;
                         std::reverse(b.entries.begin() + 1, b.entries.end());
                         if (Below(ctx.rng, 2) == 0) {
                             std::reverse(b.entries.begin(), b.entries.end());
                         }
                         return std::make_pair(WriteArchive(a), WriteArchive(b));
                     }});
    specs.push_back(
        {"tar-ownership", fs("Environment", "Ownership"),
         [](Context const& ctx) {
             auto const uid = static_cast<std::uint32_t>(1000 + Below(ctx.rng, 500));
             return std::make_pair(WriteArchive(Ustar(ctx, "root", 0)),
                                   WriteArchive(Ustar(ctx, "builder", uid)));
         },
         "tar"});
    specs.push_back(
        {"gzip-mtime", fs("Environment", "File timestamps"),
         [](Context const& ctx) {
             auto const tar = WriteArchive(Ustar(ctx, "root", 0));
             return std::make_pair(
                 WriteArchive(Gzip(tar, ctx.epoch)),
                 WriteArchive(Gzip(tar, ctx.epoch + 60 +
                                            static_cast<std::int64_t>(
                                                Below(ctx.rng, 100000)))));
         },
         "tar.gz"});
    specs.push_back(
        {"classfile-member-order",
         CatalogCause(R::JvmBytecode, "JDK Version", "Member order"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             DemoClassOptions reversed;
             reversed.reverse_methods = true;
             *reb.Find(kClass) = WriteClassfile(DemoClass(reversed));
             return FromJars(ref, reb);
         }});
    specs.push_back(
        {"classfile-line-numbers",
         CatalogCause(R::JvmBytecode, "JDK Version", "Debug information"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             DemoClassOptions shifted;
             shifted.first_line += 1 + static_cast<int>(Below(ctx.rng, 20));
             *reb.Find(kClass) = WriteClassfile(DemoClass(shifted));
             return FromJars(ref, reb);
         }});
    specs.push_back({"text-line-endings", fs("Environment", "Size"),
                     [](Context const& ctx) {
                         auto ref = BaseJar(ctx);
                         auto reb = ref;
                         *reb.Find(kNotes) =
                             "Demo library.\r\nSee the project site for usage.\r\n";
                         return FromJars(ref, reb);
                     }});
    specs.push_back({"absolute-paths", fs("Environment", "Absolute Paths"),
                     [](Context const& ctx) {
                         auto a = BaseJar(ctx).ToArchive();
                         auto b = a;
                         b.entries.back().path = "/" + b.entries.back().path;
                         return std::make_pair(WriteArchive(a), WriteArchive(b));
                     }});
    specs.push_back(
        {"javadoc-timestamp",
         CatalogCause(R::Timestamps, "Build-time Variability", "Documentation"),
         [](Context const& ctx) {
             auto ref = BaseJar(ctx);
             auto reb = ref;
             auto page = [](std::int64_t t) {
                 return "<!DOCTYPE HTML>\n<html lang=\"en\">\n<head>\n"
                        "<!-- Generated by javadoc (17) on " +
                        JavaDate(t) +
                        " -->\n<title>Demo</title>\n"
                        "<meta name=\"dc.created\" content=\"" +
                        IsoDate(t) + "\">\n</head>\n<body>\n</body>\n</html>\n";
             };
             ref.files.emplace_back("docs/api/index.html", page(ctx.epoch));
             reb.files.emplace_back(
                 "docs/api/index.html",
                 page(ctx.epoch + 600 +
                      static_cast<std::int64_t>(Below(ctx.rng, 86400))));
             return FromJars(ref, reb);
         }});
    specs.push_back({"negative-payload", UnknownCause(),
                     [](Context const& ctx) {
                         auto ref = BaseJar(ctx);
                         auto reb = ref;
                         *reb.Find(kNotes) =
                             "Demo library.\nSee the project " +
                             Pick(ctx.rng, std::vector<std::string>{
                                               "wiki", "forum", "tracker"}) +
                             " for usage.\n";
                         return FromJars(ref, reb);
                     }});
    specs.push_back({"negative-missing-entry",
                     fs("Inconsistent Build Configuration",
                        "Files removed or added"),
                     [](Context const& ctx) {
                         auto a = BaseJar(ctx).ToArchive();
                         auto b = a;
                         b.entries.pop_back();
                         return std::make_pair(WriteArchive(a), WriteArchive(b));
                     }});
    return specs;
}

}  // namespace

auto DemoClass(DemoClassOptions const& options) -> ClassFile {
    auto const self = std::string{"com/example/Demo"};
    ClassFile cf;
    cf.minor_version = 0;
    cf.major_version = 52;
    cf.access_flags = 0x0021;  // public super
    cf.this_class = self;
    cf.super_class = "java/lang/Object";

    MemberInfo count;
    count.access_flags = 0x0002;
    count.name = "count";
    count.descriptor = "I";
    MemberInfo label;
    label.access_flags = 0x0002;
    label.name = "label";
    label.descriptor = "Ljava/lang/String;";
    cf.fields = {count, label};

    int const line = options.first_line;
    cf.methods.push_back(
        Method(0x0001, "<init>", "()V", 1, 1, Bytes({0x2a, 0xb7, 0, 0, 0xb1}),
               {PoolRef{2, 2,
                        MemberRef(ConstantTag::Methodref, "java/lang/Object",
                                  "<init>", "()V")}},
               line));
    cf.methods.push_back(Method(
        0x0001, "greet", "()Ljava/lang/String;", 1, 1, Bytes({0x12, 0, 0xb0}),
        {PoolRef{1, 1, Constant{ConstantTag::String, {}, {Utf8("hello")}, 0}}},
        line + 3));
    cf.methods.push_back(Method(0x0009, "add", "(II)I", 2, 2,
                                Bytes({0x1a, 0x1b, 0x60, 0xac}), {}, line + 7));
    cf.methods.push_back(Method(
        0x0001, "getCount", "()I", 1, 1, Bytes({0x2a, 0xb4, 0, 0, 0xac}),
        {PoolRef{2, 2, MemberRef(ConstantTag::Fieldref, self, "count", "I")}},
        line + 11));
    if (options.reverse_methods) {
        std::reverse(cf.methods.begin(), cf.methods.end());
    }
    cf.attributes.push_back(
        AttributeInfo{"SourceFile", std::string(2, '\0'),
                      {PoolRef{0, 2, Utf8("Demo.java")}}});
    return cf;
}

auto BuildTaxonomyCorpus(std::uint64_t seed) -> std::vector<CorpusPair> {
    Rng rng{seed};
    // Even seconds in 2021..2023, so DOS time keeps them exactly.
    auto const epoch =
        static_cast<std::int64_t>(1609459200 + 2 * Below(rng, 47304000));
    Context const ctx{rng, epoch};
    std::vector<CorpusPair> pairs;
    for (auto const& spec : Specs()) {
        auto [ref, reb] = spec.make(ctx);
        CorpusPair p;
        p.id = spec.id;
        p.expected_cause = spec.cause;
        p.negative_control = spec.id.rfind("negative-", 0) == 0;
        p.extension = spec.extension;
        p.reference = std::move(ref);
        p.rebuild = std::move(reb);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

auto GenerateTaxonomyCorpus(std::uint64_t seed,
                            std::filesystem::path const& out_dir)
    -> std::vector<PairDescriptor> {
    std::vector<PairDescriptor> relative;
    std::vector<PairDescriptor> resolved;
    for (auto const& p : BuildTaxonomyCorpus(seed)) {
        PairDescriptor d;
        d.id = p.id;
        d.reference_path = p.id + "/reference." + p.extension;
        d.rebuild_path = p.id + "/rebuild." + p.extension;
        d.expected_cause = p.expected_cause;
        WriteFileAtomic(out_dir / d.reference_path, p.reference);
        WriteFileAtomic(out_dir / d.rebuild_path, p.rebuild);
        relative.push_back(d);
        d.reference_path = (out_dir / d.reference_path).string();
        d.rebuild_path = (out_dir / d.rebuild_path).string();
        resolved.push_back(std::move(d));
    }
    WriteFileAtomic(out_dir / "pairs.json", PairsToJson(relative));
    return resolved;
}

}  // namespace canon
