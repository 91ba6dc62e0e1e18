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

#ifndef INCLUDED_CANON_PATHS_HPP
#define INCLUDED_CANON_PATHS_HPP

#include <string_view>

namespace canon {

/// META-INF/MANIFEST.MF, any case.
[[nodiscard]] auto IsManifestPath(std::string_view path) -> bool;

/// Signature block and signature files directly under META-INF/:
/// *.SF, *.RSA, *.DSA, *.EC and SIG-*.
[[nodiscard]] auto IsSignatureFile(std::string_view path) -> bool;

/// git.properties or git.json anywhere in the tree.
[[nodiscard]] auto IsGitProperties(std::string_view path) -> bool;

/// META-INF/maven/**/pom.properties.
[[nodiscard]] auto IsPomProperties(std::string_view path) -> bool;

[[nodiscard]] auto IsClassfilePath(std::string_view path) -> bool;
[[nodiscard]] auto IsModuleInfo(std::string_view path) -> bool;

/// JSON or XML entry whose name or content mentions CycloneDX, or an SPDX
/// JSON document.
[[nodiscard]] auto IsSbomCandidate(std::string_view path,
                                   std::string_view payload) -> bool;

}  // namespace canon

#endif  // INCLUDED_CANON_PATHS_HPP
