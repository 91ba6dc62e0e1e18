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

#ifndef INCLUDED_CANON_GAV_HPP
#define INCLUDED_CANON_GAV_HPP

#include <optional>
#include <string>
#include <string_view>

namespace canon {

/// Maven coordinates.
struct Gav {
    std::string group_id;
    std::string artifact_id;
    std::string version;
    std::optional<std::string> classifier;
    std::string packaging{"jar"};

    auto operator==(Gav const&) const -> bool = default;
};

/// Accepts group:artifact:version, group:artifact:packaging:version and
/// group:artifact:packaging:classifier:version. Throws Error{InvalidGav}.
[[nodiscard]] auto ParseGav(std::string_view coordinates) -> Gav;

/// Throws Error{InvalidGav} for empty components and for characters that
/// could escape the repository layout ('/', '\\', "..", whitespace).
void ValidateGav(Gav const& gav);

/// artifactId-version[-classifier].packaging
[[nodiscard]] auto ArtifactFileName(Gav const& gav) -> std::string;

/// group/with/slashes/artifactId/version/<file name>
[[nodiscard]] auto RepositoryPath(Gav const& gav) -> std::string;

/// repo_base + "/" + RepositoryPath. Trailing slashes on the base are
/// ignored. Throws Error{InvalidGav} or Error{InvalidUrl} for a base that
/// is not http(s).
[[nodiscard]] auto ResolveArtifactUrl(Gav const& gav,
                                      std::string_view repo_base)
    -> std::string;

[[nodiscard]] auto ToString(Gav const& gav) -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_GAV_HPP
