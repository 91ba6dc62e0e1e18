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

#ifndef INCLUDED_CANON_CORPUS_HPP
#define INCLUDED_CANON_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "canon/classfile.hpp"
#include "canon/taxonomy.hpp"
#include "canon/verify.hpp"

namespace canon {

/// One reference/rebuild pair that differs only by `expected_cause`.
struct CorpusPair {
    std::string id;
    TaxonomyCause expected_cause;
    /// Pairs that must stay Unreproducible under every profile. Their ids
    /// start with "negative-".
    bool negative_control{false};
    std::string extension;  // "jar", "tar" or "tar.gz"
    std::string reference;
    std::string rebuild;
};

/// Deterministic for a given seed.
[[nodiscard]] auto BuildTaxonomyCorpus(std::uint64_t seed)
    -> std::vector<CorpusPair>;

/// Writes <out>/<id>/reference.<ext>, <out>/<id>/rebuild.<ext> and
/// <out>/pairs.json (with paths relative to <out>). Returns the descriptors
/// with paths resolved against out_dir. Throws Error{IoError}.
[[nodiscard]] auto GenerateTaxonomyCorpus(std::uint64_t seed,
                                          std::filesystem::path const& out_dir)
    -> std::vector<PairDescriptor>;

struct DemoClassOptions {
    bool reverse_methods{false};
    int first_line{10};
};

/// com/example/Demo: two fields, four straight-line methods, SourceFile and
/// LineNumberTable. Loads and verifies on any JVM from Java 8 on.
[[nodiscard]] auto DemoClass(DemoClassOptions const& options = {})
    -> ClassFile;

}  // namespace canon

#endif  // INCLUDED_CANON_CORPUS_HPP
