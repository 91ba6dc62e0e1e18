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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "canon/archive.hpp"
#include "canon/corpus.hpp"
#include "canon/error.hpp"
#include "canon/fetch.hpp"
#include "canon/gav.hpp"
#include "canon/io.hpp"
#include "canon/rules.hpp"
#include "canon/stabilize.hpp"
#include "canon/verify.hpp"

namespace {

using namespace canon;

struct ProfileFlags {
    std::string profile{"default"};
    std::optional<std::int64_t> timestamp;

    void Register(CLI::App* cmd) {
        cmd->add_option("--profile", profile,
                        "archive, default or aggressive")
            ->capture_default_str();
        cmd->add_option("--timestamp", timestamp,
                        "Fixed entry mtime (seconds since the epoch); "
                        "defaults to SOURCE_DATE_EPOCH, then 1980-01-01");
    }

    [[nodiscard]] auto Build() const -> RuleProfile {
        auto name = ParseProfileName(profile);
        if (not name) {
            throw Error{ErrorCode::InvalidProfile, "unknown profile " + profile};
        }
        auto ts = timestamp ? timestamp : TimestampFromEnvironment();
        return MakeProfile(*name, ts.value_or(kZipTimestampFloor));
    }
};

void CheckFormat(std::string const& format) {
    if (format != "text" and format != "json") {
        throw Error{ErrorCode::InvalidProfile,
                    "--format must be text or json, got " + format};
    }
}

}  // namespace

auto main(int argc, char** argv) -> int {
    CLI::App app{"Compare and canonicalize reference and rebuild artifacts."};
    app.require_subcommand(1);

    // compare
    auto* compare = app.add_subcommand(
        "compare", "Compare two artifacts, raw and after canonicalization.");
    std::string ref_path;
    std::string reb_path;
    std::string compare_format = "text";
    int depth = kDefaultDiffDepth;
    std::string audit_dir;
    ProfileFlags compare_profile;
    compare->add_option("reference", ref_path)->required();
    compare->add_option("rebuild", reb_path)->required();
    compare_profile.Register(compare);
    compare->add_option("--format", compare_format, "text or json")
        ->capture_default_str();
    compare->add_option("--depth", depth, "Container levels to expand")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    compare->add_option("--out", audit_dir,
                        "Write both stabilized artifacts to this directory");

    // stabilize
    auto* stabilize =
        app.add_subcommand("stabilize", "Write the canonical form of an archive.");
    std::string in_path;
    std::string out_path;
    ProfileFlags stabilize_profile;
    stabilize->add_option("input", in_path)->required();
    stabilize->add_option("-o,--output", out_path)->required();
    stabilize_profile.Register(stabilize);

    // rules
    auto* rules = app.add_subcommand("rules", "List the rule catalog.");
    std::string rules_format = "text";
    rules->add_option("--format", rules_format, "text or json")
        ->capture_default_str();

    // batch
    auto* batch = app.add_subcommand("batch", "Verify every pair in pairs.json.");
    std::string pairs_path;
    unsigned jobs = 0;
    std::string batch_format = "text";
    ProfileFlags batch_profile;
    batch->add_option("pairs", pairs_path)->required();
    batch->add_option("--jobs", jobs, "Worker threads, 0 for one per core")
        ->capture_default_str();
    batch->add_option("--format", batch_format, "text or json")
        ->capture_default_str();
    batch->add_option("--depth", depth, "Container levels to expand")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    batch_profile.Register(batch);

    // corpus
    auto* corpus = app.add_subcommand(
        "corpus", "Generate the synthetic taxonomy corpus and pairs.json.");
    std::string corpus_dir;
    std::uint64_t seed = 1;
    corpus->add_option("out_dir", corpus_dir)->required();
    corpus->add_option("--seed", seed)->capture_default_str();

    // fetch
    auto* fetch = app.add_subcommand(
        "fetch", "Download a digest-verified artifact from a Maven repository.");
    std::string coordinates;
    std::string repo = "https://repo1.maven.org/maven2";
    std::string cache_dir = ".canon-cache";
    std::string fetch_out;
    fetch->add_option("gav", coordinates,
                      "group:artifact[:packaging[:classifier]]:version")
        ->required();
    fetch->add_option("--repo", repo)->capture_default_str();
    fetch->add_option("--cache", cache_dir)->capture_default_str();
    fetch->add_option("-o,--output", fetch_out, "Also copy the artifact here");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        return app.exit(e) == 0 ? 0 : kExitOperationalError;
    }

    try {
        if (compare->parsed()) {
            CheckFormat(compare_format);
            auto profile = compare_profile.Build();
            auto verdict = VerifyPair(ReadFileBytes(ref_path),
                                      ReadFileBytes(reb_path), profile, depth);
            if (not audit_dir.empty()) {
                std::filesystem::path dir{audit_dir};
                auto name = [](std::string const& p) {
                    return std::filesystem::path{p}.filename().string();
                };
                WriteFileAtomic(dir / ("reference-" + name(ref_path)),
                                verdict.stabilized_reference);
                WriteFileAtomic(dir / ("rebuild-" + name(reb_path)),
                                verdict.stabilized_rebuild);
            }
            std::cout << (compare_format == "json" ? VerdictToJson(verdict)
                                                   : VerdictToText(verdict));
            return ExitCodeFor(verdict.status);
        }
        if (stabilize->parsed()) {
            auto profile = stabilize_profile.Build();
            auto bytes = ReadFileBytes(in_path);
            auto result = StabilizeArchiveDetailed(ParseArchive(bytes), profile);
            WriteFileAtomic(out_path, WriteArchive(result.archive));
            for (auto const& id : result.applied_rule_ids) {
                std::cerr << "applied " << id << "\n";
            }
            for (auto const& f : result.flags) {
                std::cerr << "flag " << f << "\n";
            }
            return 0;
        }
        if (rules->parsed()) {
            CheckFormat(rules_format);
            std::cout << (rules_format == "json" ? RulesToJson() : RulesToText());
            return 0;
        }
        if (batch->parsed()) {
            CheckFormat(batch_format);
            auto profile = batch_profile.Build();
            auto pairs = ReadPairsFile(pairs_path);
            auto summary = VerifyBatch(pairs, profile, BatchOptions{jobs, depth});
            std::cout << (batch_format == "json" ? BatchToJson(summary)
                                                 : BatchToText(summary));
            return summary.failed == 0 ? 0 : kExitOperationalError;
        }
        if (corpus->parsed()) {
            auto pairs = GenerateTaxonomyCorpus(seed, corpus_dir);
            std::cout << pairs.size() << " pairs written to "
                      << (std::filesystem::path{corpus_dir} / "pairs.json").string()
                      << "\n";
            return 0;
        }
        if (fetch->parsed()) {
            auto gav = ParseGav(coordinates);
            Fetcher fetcher{FetchOptions{cache_dir}};
            auto bytes = fetcher.FetchReference(gav, repo);
            auto cached = fetcher.CachePath(gav);
            if (not fetch_out.empty()) {
                WriteFileAtomic(fetch_out, bytes);
            }
            std::cout << cached.string() << "\n";
            return 0;
        }
    } catch (Error const& e) {
        std::cerr << "canon: " << e.what() << "\n";
        return kExitOperationalError;
    }
    return kExitOperationalError;
}
