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

#ifndef INCLUDED_CANON_VERIFY_HPP
#define INCLUDED_CANON_VERIFY_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canon/diff.hpp"
#include "canon/rules.hpp"
#include "canon/taxonomy.hpp"

namespace canon {

enum class VerdictStatus {
    Unreproducible,
    ReproducibleAfterCanonicalization,
    Reproducible,
};

[[nodiscard]] auto ToString(VerdictStatus status) noexcept -> std::string_view;

/// CLI exit codes.
inline constexpr int kExitReproducible = 0;
inline constexpr int kExitAfterCanonicalization = 10;
inline constexpr int kExitUnreproducible = 20;
inline constexpr int kExitOperationalError = 2;

[[nodiscard]] auto ExitCodeFor(VerdictStatus status) noexcept -> int;

inline constexpr int kDefaultDiffDepth = 4;

struct Verdict {
    VerdictStatus status{VerdictStatus::Unreproducible};
    ProfileName profile_used{ProfileName::Default};
    DiffReport raw_report;
    /// Absent when the raw bytes are already identical.
    std::optional<DiffReport> canonical_report;
    /// Union over both sides, in catalog order.
    std::vector<std::string> applied_rule_ids;
    /// Stabilizer flags, prefixed with "reference: " or "rebuild: ".
    std::vector<std::string> flags;
    /// What was compared after canonicalization. Inputs that are not
    /// supported containers are passed through unchanged.
    std::string stabilized_reference;
    std::string stabilized_rebuild;
};

/// Raw comparison, then write(stabilize(parse(x))) on both sides and a
/// second comparison. Never throws for malformed input.
[[nodiscard]] auto VerifyPair(std::string_view reference,
                              std::string_view rebuild,
                              RuleProfile const& profile,
                              int depth = kDefaultDiffDepth) -> Verdict;

struct PairDescriptor {
    std::string id;
    std::string reference_path;
    std::string rebuild_path;
    std::optional<TaxonomyCause> expected_cause;

    auto operator==(PairDescriptor const&) const -> bool = default;
};

/// Reads pairs.json: [{id, reference_path, rebuild_path, expected_cause?}]
/// where expected_cause is {reason, root_cause, fine_grained}. Relative
/// paths are resolved against the file's directory. Throws
/// Error{MissingInput} or Error{IoError}.
[[nodiscard]] auto ReadPairsFile(std::filesystem::path const& path)
    -> std::vector<PairDescriptor>;

[[nodiscard]] auto PairsToJson(std::vector<PairDescriptor> const& pairs)
    -> std::string;

struct PairResult {
    PairDescriptor descriptor;
    std::optional<Verdict> verdict;
    /// Set instead of verdict when an input could not be read.
    std::optional<std::string> error;
};

struct BatchSummary {
    std::vector<PairResult> results;  // descriptor order
    std::size_t reproducible{0};
    std::size_t after_canon{0};
    std::size_t unreproducible{0};
    std::size_t failed{0};
    /// Cause counts summed over the raw reports.
    std::vector<CauseCount> cause_stats;
};

struct BatchOptions {
    /// Worker threads; 0 means one per hardware thread.
    unsigned jobs{0};
    int depth{kDefaultDiffDepth};
};

[[nodiscard]] auto VerifyBatch(std::vector<PairDescriptor> const& pairs,
                               RuleProfile const& profile,
                               BatchOptions const& options = {})
    -> BatchSummary;

[[nodiscard]] auto VerdictToJson(Verdict const& verdict) -> std::string;
[[nodiscard]] auto VerdictToText(Verdict const& verdict) -> std::string;
[[nodiscard]] auto BatchToJson(BatchSummary const& summary) -> std::string;
[[nodiscard]] auto BatchToText(BatchSummary const& summary) -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_VERIFY_HPP
