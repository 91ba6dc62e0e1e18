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

#include "canon/verify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>
#include <utility>

#include "canon/archive.hpp"
#include "canon/error.hpp"
#include "canon/io.hpp"
#include "canon/stabilize.hpp"
#include "json.hpp"

namespace canon {

namespace {

using nlohmann::json;

struct Side {
    std::string bytes;
    std::vector<std::string> applied;
    std::vector<std::string> flags;
};

auto Stabilize(std::string_view bytes, RuleProfile const& profile) -> Side {
    Side side;
    if (DetectFormat(bytes) == FormatKind::Opaque) {
        side.bytes = std::string{bytes};
        return side;
    }
    try {
        auto result = StabilizeArchiveDetailed(ParseArchive(bytes), profile);
        side.bytes = WriteArchive(result.archive);
        side.applied = std::move(result.applied_rule_ids);
        side.flags = std::move(result.flags);
    } catch (Error const& e) {
        side.bytes = std::string{bytes};
        side.flags.push_back(std::string{"not stabilized: "} + e.what());
    }
    return side;
}

auto CatalogOrder(std::set<std::string> const& ids) -> std::vector<std::string> {
    std::vector<std::string> out;
    for (auto const& rule : ListRules()) {
        if (ids.count(rule.id) != 0) {
            out.push_back(rule.id);
        }
    }
    return out;
}

auto CauseToJson(TaxonomyCause const& c) -> json {
    return {{"reason", ToString(c.reason)},
            {"root_cause", c.root_cause},
            {"fine_grained", c.fine_grained}};
}

auto CauseFromJson(json const& j) -> TaxonomyCause {
    auto reason = ReasonFromString(j.at("reason").get<std::string>());
    if (not reason) {
        throw Error{ErrorCode::IoError,
                    "unknown reason " + j.at("reason").get<std::string>()};
    }
    return TaxonomyCause{*reason, j.at("root_cause").get<std::string>(),
                         j.at("fine_grained").get<std::string>()};
}

auto VerdictJson(Verdict const& v) -> json {
    json j;
    j["status"] = ToString(v.status);
    j["profile"] = ToString(v.profile_used);
    j["applied_rule_ids"] = v.applied_rule_ids;
    j["flags"] = v.flags;
    j["raw_report"] = json::parse(ReportToJson(v.raw_report));
    j["canonical_report"] =
        v.canonical_report ? json::parse(ReportToJson(*v.canonical_report))
                           : json(nullptr);
    return j;
}

auto Dump(json const& j) -> std::string {
    return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

}  // namespace

auto ToString(VerdictStatus status) noexcept -> std::string_view {
    switch (status) {
        case VerdictStatus::Reproducible:
            return "Reproducible";
        case VerdictStatus::ReproducibleAfterCanonicalization:
            return "ReproducibleAfterCanonicalization";
        case VerdictStatus::Unreproducible:
            return "Unreproducible";
    }
    return "Unreproducible";
}

auto ExitCodeFor(VerdictStatus status) noexcept -> int {
    switch (status) {
        case VerdictStatus::Reproducible:
            return kExitReproducible;
        case VerdictStatus::ReproducibleAfterCanonicalization:
            return kExitAfterCanonicalization;
        case VerdictStatus::Unreproducible:
            return kExitUnreproducible;
    }
    return kExitUnreproducible;
}

auto VerifyPair(std::string_view reference, std::string_view rebuild,
                RuleProfile const& profile, int depth) -> Verdict {
    Verdict v;
    v.profile_used = profile.name;
    v.raw_report = Classify(DiffArtifacts(reference, rebuild, depth));
    if (not v.raw_report.root) {
        v.status = VerdictStatus::Reproducible;
        v.stabilized_reference = std::string{reference};
        v.stabilized_rebuild = std::string{rebuild};
        return v;
    }
    auto ref = Stabilize(reference, profile);
    auto reb = Stabilize(rebuild, profile);
    std::set<std::string> applied(ref.applied.begin(), ref.applied.end());
    applied.insert(reb.applied.begin(), reb.applied.end());
    v.applied_rule_ids = CatalogOrder(applied);
    for (auto const& f : ref.flags) {
        v.flags.push_back("reference: " + f);
    }
    for (auto const& f : reb.flags) {
        v.flags.push_back("rebuild: " + f);
    }
    v.canonical_report = Classify(DiffArtifacts(ref.bytes, reb.bytes, depth));
    v.status = v.canonical_report->root
                   ? VerdictStatus::Unreproducible
                   : VerdictStatus::ReproducibleAfterCanonicalization;
    v.stabilized_reference = std::move(ref.bytes);
    v.stabilized_rebuild = std::move(reb.bytes);
    return v;
}

auto ReadPairsFile(std::filesystem::path const& path)
    -> std::vector<PairDescriptor> {
    auto const text = ReadFileBytes(path);
    auto const base = path.parent_path();
    auto resolve = [&](std::string const& p) {
        std::filesystem::path fp{p};
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };
    std::vector<PairDescriptor> pairs;
    try {
        auto const j = json::parse(text);
        if (not j.is_array()) {
            throw Error{ErrorCode::IoError, path.string() + ": not an array"};
        }
        for (auto const& item : j) {
            PairDescriptor d;
            d.id = item.at("id").get<std::string>();
            d.reference_path =
                resolve(item.at("reference_path").get<std::string>());
            d.rebuild_path = resolve(item.at("rebuild_path").get<std::string>());
            if (item.contains("expected_cause") and
                not item["expected_cause"].is_null()) {
                d.expected_cause = CauseFromJson(item["expected_cause"]);
            }
            pairs.push_back(std::move(d));
        }
    } catch (json::exception const& e) {
        throw Error{ErrorCode::IoError, path.string() + ": " + e.what()};
    }
    return pairs;
}

auto PairsToJson(std::vector<PairDescriptor> const& pairs) -> std::string {
    auto j = json::array();
    for (auto const& d : pairs) {
        json item;
        item["id"] = d.id;
        item["reference_path"] = d.reference_path;
        item["rebuild_path"] = d.rebuild_path;
        if (d.expected_cause) {
            item["expected_cause"] = CauseToJson(*d.expected_cause);
        }
        j.push_back(std::move(item));
    }
    return Dump(j);
}

auto VerifyBatch(std::vector<PairDescriptor> const& pairs,
                 RuleProfile const& profile, BatchOptions const& options)
    -> BatchSummary {
    BatchSummary summary;
    summary.results.resize(pairs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next++; i < pairs.size(); i = next++) {
            auto& result = summary.results[i];
            result.descriptor = pairs[i];
            try {
                auto ref = ReadFileBytes(pairs[i].reference_path);
                auto reb = ReadFileBytes(pairs[i].rebuild_path);
                auto v = VerifyPair(ref, reb, profile, options.depth);
                // Stabilized bytes are only needed for single-pair audits.
                v.stabilized_reference.clear();
                v.stabilized_rebuild.clear();
                result.verdict = std::move(v);
            } catch (Error const& e) {
                result.error = e.what();
            }
        }
    };
    unsigned jobs = options.jobs != 0
                        ? options.jobs
                        : std::max(1U, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(
        std::min<std::size_t>(jobs, std::max<std::size_t>(pairs.size(), 1)));
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < jobs; ++t) {
        threads.emplace_back(worker);
    }
    worker();
    for (auto& t : threads) {
        t.join();
    }

    std::map<TaxonomyCause, std::size_t> causes;
    for (auto const& r : summary.results) {
        if (not r.verdict) {
            ++summary.failed;
            continue;
        }
        switch (r.verdict->status) {
            case VerdictStatus::Reproducible:
                ++summary.reproducible;
                break;
            case VerdictStatus::ReproducibleAfterCanonicalization:
                ++summary.after_canon;
                break;
            case VerdictStatus::Unreproducible:
                ++summary.unreproducible;
                break;
        }
        for (auto const& s : r.verdict->raw_report.stats) {
            causes[s.cause] += s.count;
        }
    }
    for (auto const& [cause, count] : causes) {
        summary.cause_stats.push_back(CauseCount{cause, count});
    }
    return summary;
}

auto VerdictToJson(Verdict const& verdict) -> std::string {
    return Dump(VerdictJson(verdict));
}

auto VerdictToText(Verdict const& verdict) -> std::string {
    std::string out = "status: " + std::string{ToString(verdict.status)} +
                      " (profile " +
                      std::string{ToString(verdict.profile_used)} + ")\n";
    if (not verdict.applied_rule_ids.empty()) {
        out += "applied rules:";
        for (auto const& id : verdict.applied_rule_ids) {
            out += " " + id;
        }
        out += "\n";
    }
    for (auto const& f : verdict.flags) {
        out += "flag: " + f + "\n";
    }
    out += "== raw comparison\n" + ReportToText(verdict.raw_report);
    if (verdict.canonical_report) {
        out += "== after canonicalization\n" +
               ReportToText(*verdict.canonical_report);
    }
    return out;
}

auto BatchToJson(BatchSummary const& summary) -> std::string {
    json j;
    j["counts"] = {{"reproducible", summary.reproducible},
                   {"after_canon", summary.after_canon},
                   {"unreproducible", summary.unreproducible},
                   {"failed", summary.failed}};
    auto stats = json::array();
    for (auto const& s : summary.cause_stats) {
        auto c = CauseToJson(s.cause);
        c["count"] = s.count;
        stats.push_back(std::move(c));
    }
    j["cause_stats"] = std::move(stats);
    auto results = json::array();
    for (auto const& r : summary.results) {
        json item;
        item["id"] = r.descriptor.id;
        if (r.verdict) {
            item["status"] = ToString(r.verdict->status);
            item["applied_rule_ids"] = r.verdict->applied_rule_ids;
            auto leaf = json::array();
            for (auto const& c : LeafCauses(r.verdict->raw_report)) {
                leaf.push_back(CauseToJson(c));
            }
            item["causes"] = std::move(leaf);
        } else {
            item["error"] = r.error.value_or("");
        }
        results.push_back(std::move(item));
    }
    j["results"] = std::move(results);
    return Dump(j);
}

auto BatchToText(BatchSummary const& summary) -> std::string {
    std::string out;
    for (auto const& r : summary.results) {
        out += r.descriptor.id + "\t";
        out += r.verdict ? std::string{ToString(r.verdict->status)}
                         : "error: " + r.error.value_or("");
        out += "\n";
    }
    out += "reproducible " + std::to_string(summary.reproducible) +
           ", after canonicalization " + std::to_string(summary.after_canon) +
           ", unreproducible " + std::to_string(summary.unreproducible) +
           ", failed " + std::to_string(summary.failed) + "\n";
    for (auto const& s : summary.cause_stats) {
        out += std::to_string(s.count) + "\t" + ToString(s.cause) + "\n";
    }
    return out;
}

}  // namespace canon
