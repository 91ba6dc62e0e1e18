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

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "canon/error.hpp"
#include "canon/rules.hpp"
#include "canon/taxonomy.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace canon {
namespace {

using M = Mitigation;
using R = Reason;

struct Row {
    Reason reason;
    char const* root;
    char const* fine;
    Mitigation mitigation;
};

// The published taxonomy table, transcribed by hand.
auto const kTable = std::vector<Row>{
    {R::BuildManifest, "Environment", "Built-By", M::CanonicalizeByRebuilder},
    {R::BuildManifest, "Environment", "Signed JARs", M::CanonicalizeByRebuilder},
    {R::BuildManifest, "Environment", "Os-Version", M::CanonicalizeByRebuilder},
    {R::BuildManifest, "Environment", "Eclipse Properties", M::CanonicalizeByRebuilder},
    {R::BuildManifest, "Rebuild Process", "Implementation-Build-Java-Vendor", M::FixRebuildProcess},
    {R::BuildManifest, "Rebuild Process", "Created-By", M::FixRebuildProcess},
    {R::BuildManifest, "Rebuild Process", "Originally-Created-By", M::FixRebuildProcess},
    {R::BuildManifest, "Rebuild Process", "SCM-Revision", M::FixRebuildProcess},
    {R::BuildManifest, "Rebuild Process", "Build-Jdk", M::FixRebuildProcess},
    {R::BuildManifest, "Dynamic Properties", "SCM-Git-Branch", M::FixBuildProcess},
    {R::BuildManifest, "Dynamic Properties", "Bnd-LastModified", M::FixBuildProcess},
    {R::BuildManifest, "Inconsistent Build Configuration", "Order of properties and their values", M::CanonicalizeByRebuilder},
    {R::Sbom, "Java Vendor", "Removal of hash algorithms", M::FixRebuildProcess},
    {R::Sbom, "Inconsistent Build Configuration", "Addition of components", M::FixBuildProcess},
    {R::Sbom, "Inconsistent Build Configuration", "Removal of components", M::FixBuildProcess},
    {R::Sbom, "Inconsistent Build Configuration", "Modification of components", M::FixBuildProcess},
    {R::Sbom, "Dynamic Properties", "Timestamp", M::CanonicalizeByRebuilder},
    {R::Sbom, "Dynamic Properties", "SerialNumber", M::CanonicalizeByRebuilder},
    {R::Sbom, "External Metadata", "License", M::CanonicalizeByRebuilder},
    {R::Sbom, "External Metadata", "Description of components", M::CanonicalizeByRebuilder},
    {R::Sbom, "External Metadata", "ExternalReferences", M::CanonicalizeByRebuilder},
    {R::Filesystem, "Environment", "Permissions", M::CanonicalizeByRebuilder},
    {R::Filesystem, "Environment", "Ownership", M::CanonicalizeByRebuilder},
    {R::Filesystem, "Environment", "Size", M::CanonicalizeByRebuilder},
    {R::Filesystem, "Environment", "Absolute Paths", M::CanonicalizeByRebuilder},
    {R::Filesystem, "Inconsistent Build Configuration", "Type", M::FixBuildProcess},
    {R::Filesystem, "Inconsistent Build Configuration", "Files removed or added", M::FixBuildProcess},
    {R::JvmBytecode, "JDK Version", "Debug information", M::FixBuildProcess},
    {R::JvmBytecode, "JDK Version", "Optimization and de-optimization", M::FixBuildProcess},
    {R::JvmBytecode, "JDK Version", "Refactoring", M::FixBuildProcess},
    {R::JvmBytecode, "Embedded Metadata", "Absolute file paths, timestamps, Java/project version, Git properties, usernames", M::FixBuildProcess},
    {R::JvmBytecode, "Generated Code", "Java Compiler", M::CanonicalizeByRebuilder},
    {R::JvmBytecode, "Generated Code", "Maven Plugins", M::FixRebuildProcess},
    {R::VersioningProperties, "Source Repository State", "Number of commits", M::CanonicalizeByRebuilder},
    {R::VersioningProperties, "Source Repository State", "Number of Git tags", M::CanonicalizeByRebuilder},
    {R::VersioningProperties, "Source Repository State", "Branch name", M::CanonicalizeByRebuilder},
    {R::VersioningProperties, "Source Repository State", "Local branch name", M::CanonicalizeByRebuilder},
    {R::VersioningProperties, "Source Repository State", "Timezone of commit", M::CanonicalizeByRebuilder},
    {R::VersioningProperties, "Source Repository State", "Remote URL", M::CanonicalizeByRebuilder},
    {R::Timestamps, "Build-time Variability", "Documentation", M::FixBuildProcess},
    {R::Timestamps, "Build-time Variability", "Shell scripts", M::FixBuildProcess},
    {R::Timestamps, "Build-time Variability", "Executable binaries", M::FixBuildProcess},
    {R::Timestamps, "Build-time Variability", "JVM bytecode", M::FixBuildProcess},
    {R::Timestamps, "Build-time Variability", "Build manifest", M::FixBuildProcess},
    {R::Timestamps, "Build-time Variability", "File metadata", M::FixBuildProcess},
};

auto Cause(Row const& r) -> TaxonomyCause {
    return TaxonomyCause{r.reason, r.root, r.fine};
}

TEST(Taxonomy, CatalogContainsPublishedTable) {
    ASSERT_EQ(kTable.size(), 45U);
    for (auto const& row : kTable) {
        auto const* found = FindCatalogRow(Cause(row));
        ASSERT_NE(found, nullptr) << row.fine;
        EXPECT_EQ(found->mitigation, row.mitigation) << row.fine;
    }
}

TEST(Taxonomy, CatalogCauseRejectsUnknownRows) {
    EXPECT_NO_THROW((void)CatalogCause(R::Sbom, "Dynamic Properties", "SerialNumber"));
    EXPECT_ANY_THROW((void)CatalogCause(R::Sbom, "Dynamic Properties", "Nope"));
    EXPECT_EQ(FindCatalogRow(UnknownCause()), nullptr);
}

TEST(Taxonomy, ReasonNamesRoundTrip) {
    for (auto r : {R::BuildManifest, R::Sbom, R::Filesystem, R::JvmBytecode,
                   R::VersioningProperties, R::Timestamps, R::Unknown}) {
        EXPECT_EQ(ReasonFromString(ToString(r)), r);
    }
    EXPECT_EQ(ReasonFromString("nope"), std::nullopt);
}

TEST(Rules, CatalogExamples) {
    auto const* built_by = FindRule("manifest.built-by");
    ASSERT_NE(built_by, nullptr);
    EXPECT_EQ(built_by->cause,
              (TaxonomyCause{R::BuildManifest, "Environment", "Built-By"}));
    auto const* serial = FindRule("sbom.serial-number");
    ASSERT_NE(serial, nullptr);
    EXPECT_EQ(serial->mitigation, M::CanonicalizeByRebuilder);
    EXPECT_EQ(FindRule("no.such.rule"), nullptr);
}

TEST(Rules, AtLeastOneRulePerCanonicalizableCause) {
    auto const canonicalizable = std::count_if(
        kTable.begin(), kTable.end(),
        [](Row const& r) { return r.mitigation == M::CanonicalizeByRebuilder; });
    EXPECT_GE(static_cast<long>(ListRules().size()), canonicalizable);
}

TEST(Rules, DefaultCoversExactlyTheCanonicalizableRows) {
    auto const def = MakeProfile(ProfileName::Default);
    for (auto const& row : TaxonomyCatalog()) {
        EXPECT_EQ(ProfileCovers(def, row.cause),
                  row.mitigation == M::CanonicalizeByRebuilder)
            << ToString(row.cause);
    }
}

TEST(Rules, IdsUniqueAndCausesCatalogued) {
    std::set<std::string> ids;
    for (auto const& rule : ListRules()) {
        EXPECT_TRUE(ids.insert(rule.id).second) << rule.id;
        EXPECT_NE(FindCatalogRow(rule.cause), nullptr) << rule.id;
        for (auto const& c : rule.covers) {
            EXPECT_NE(FindCatalogRow(c), nullptr) << rule.id;
        }
        if (rule.kind == RuleKind::Classifier) {
            // Classifier rules carry the mitigation of their table row.
            EXPECT_EQ(rule.mitigation, FindCatalogRow(rule.cause)->mitigation)
                << rule.id;
            EXPECT_TRUE(rule.covers.empty()) << rule.id;
        }
        else {
            EXPECT_EQ(rule.mitigation, M::CanonicalizeByRebuilder) << rule.id;
        }
    }
}

TEST(Rules, ProfilesAreNested) {
    auto const a = MakeProfile(ProfileName::ArchiveOnly);
    auto const d = MakeProfile(ProfileName::Default);
    auto const g = MakeProfile(ProfileName::Aggressive);
    EXPECT_TRUE(std::includes(d.enabled_rule_ids.begin(), d.enabled_rule_ids.end(),
                              a.enabled_rule_ids.begin(), a.enabled_rule_ids.end()));
    EXPECT_TRUE(std::includes(g.enabled_rule_ids.begin(), g.enabled_rule_ids.end(),
                              d.enabled_rule_ids.begin(), d.enabled_rule_ids.end()));
    EXPECT_LT(a.enabled_rule_ids.size(), d.enabled_rule_ids.size());
    EXPECT_LT(d.enabled_rule_ids.size(), g.enabled_rule_ids.size());
    EXPECT_TRUE(a.Enabled("archive.mtime"));
    EXPECT_FALSE(a.Enabled("manifest.built-by"));
    EXPECT_TRUE(d.Enabled("manifest.built-by"));
    EXPECT_FALSE(d.Enabled("classfile.member-order"));
    EXPECT_TRUE(g.Enabled("classfile.member-order"));
    EXPECT_FALSE(g.Enabled("classfile.annotation-arrays"));
}

TEST(Rules, ProfileValidation) {
    EXPECT_EQ(MakeProfile(ProfileName::Default).fixed_timestamp, kZipTimestampFloor);
    EXPECT_EQ(MakeProfile(ProfileName::Default, 1700000000).fixed_timestamp,
              1700000000);
    try {
        (void)MakeProfile(ProfileName::Default, kZipTimestampFloor - 1);
        FAIL() << "expected InvalidProfile";
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidProfile);
    }
    auto p = MakeProfile(ProfileName::Default);
    EXPECT_NO_THROW(ValidateProfile(p));
    p.enabled_rule_ids.insert("bogus.rule");
    EXPECT_THROW(ValidateProfile(p), Error);
    p = MakeProfile(ProfileName::Default);
    p.recursion_depth_limit = -1;
    EXPECT_THROW(ValidateProfile(p), Error);
}

TEST(Rules, ProfileNames) {
    EXPECT_EQ(ParseProfileName("archive"), ProfileName::ArchiveOnly);
    EXPECT_EQ(ParseProfileName("Archive-Only"), ProfileName::ArchiveOnly);
    EXPECT_EQ(ParseProfileName("DEFAULT"), ProfileName::Default);
    EXPECT_EQ(ParseProfileName("aggressive"), ProfileName::Aggressive);
    EXPECT_EQ(ParseProfileName("wild"), std::nullopt);
    EXPECT_EQ(ToString(ProfileName::ArchiveOnly), "archive");
}

TEST(Rules, TimestampFromEnvironment) {
    ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    EXPECT_EQ(TimestampFromEnvironment(), 1700000000);
    ::setenv("SOURCE_DATE_EPOCH", "12", 1);
    EXPECT_EQ(TimestampFromEnvironment(), std::nullopt);
    ::setenv("SOURCE_DATE_EPOCH", "soon", 1);
    EXPECT_EQ(TimestampFromEnvironment(), std::nullopt);
    ::unsetenv("SOURCE_DATE_EPOCH");
    EXPECT_EQ(TimestampFromEnvironment(), std::nullopt);
}

TEST(Rules, JsonListing) {
    auto const doc = nlohmann::json::parse(RulesToJson());
    ASSERT_TRUE(doc.is_array());
    EXPECT_EQ(doc.size(), ListRules().size());
    EXPECT_EQ(doc[0]["id"], ListRules()[0].id);
    EXPECT_FALSE(RulesToText().empty());
}

}  // namespace
}  // namespace canon
