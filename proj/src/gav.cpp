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

#include "canon/gav.hpp"

#include <algorithm>
#include <vector>

#include "canon/error.hpp"

namespace canon {

namespace {

auto Split(std::string_view s, char sep) -> std::vector<std::string> {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

auto AllowedChar(char c) -> bool {
    return (c >= 'a' and c <= 'z') or (c >= 'A' and c <= 'Z') or
           (c >= '0' and c <= '9') or c == '.' or c == '-' or c == '_' or
           c == '+' or c == '~';
}

void CheckComponent(std::string_view what, std::string_view value) {
    if (value.empty()) {
        throw Error{ErrorCode::InvalidGav, std::string{what} + " is empty"};
    }
    if (not std::all_of(value.begin(), value.end(), AllowedChar)) {
        throw Error{ErrorCode::InvalidGav, std::string{what} +
                                               " has invalid characters: " +
                                               std::string{value}};
    }
    if (value.find("..") != std::string_view::npos or value == ".") {
        throw Error{ErrorCode::InvalidGav,
                    std::string{what} + " escapes the layout: " +
                        std::string{value}};
    }
}

}  // namespace

auto ParseGav(std::string_view coordinates) -> Gav {
    auto parts = Split(coordinates, ':');
    Gav gav;
    switch (parts.size()) {
        case 3:
            gav = Gav{parts[0], parts[1], parts[2], std::nullopt, "jar"};
            break;
        case 4:
            gav = Gav{parts[0], parts[1], parts[3], std::nullopt, parts[2]};
            break;
        case 5:
            gav = Gav{parts[0], parts[1], parts[4], parts[3], parts[2]};
            break;
        default:
            throw Error{ErrorCode::InvalidGav,
                        "expected group:artifact[:packaging[:classifier]]:"
                        "version, got " +
                            std::string{coordinates}};
    }
    ValidateGav(gav);
    return gav;
}

void ValidateGav(Gav const& gav) {
    CheckComponent("group id", gav.group_id);
    for (auto const& segment : Split(gav.group_id, '.')) {
        if (segment.empty()) {
            throw Error{ErrorCode::InvalidGav,
                        "group id has an empty segment: " + gav.group_id};
        }
    }
    CheckComponent("artifact id", gav.artifact_id);
    CheckComponent("version", gav.version);
    if (gav.classifier) {
        CheckComponent("classifier", *gav.classifier);
    }
    CheckComponent("packaging", gav.packaging);
}

auto ArtifactFileName(Gav const& gav) -> std::string {
    ValidateGav(gav);
    auto name = gav.artifact_id + "-" + gav.version;
    if (gav.classifier) {
        name += "-" + *gav.classifier;
    }
    return name + "." + gav.packaging;
}

auto RepositoryPath(Gav const& gav) -> std::string {
    auto file = ArtifactFileName(gav);
    auto group = gav.group_id;
    std::replace(group.begin(), group.end(), '.', '/');
    return group + "/" + gav.artifact_id + "/" + gav.version + "/" + file;
}

auto ResolveArtifactUrl(Gav const& gav, std::string_view repo_base)
    -> std::string {
    auto const path = RepositoryPath(gav);
    std::string base{repo_base};
    auto const scheme_end = base.find("://");
    if (scheme_end == std::string::npos or
        (base.compare(0, scheme_end, "http") != 0 and
         base.compare(0, scheme_end, "https") != 0) or
        base.size() == scheme_end + 3) {
        throw Error{ErrorCode::InvalidUrl, "not an http(s) URL: " + base};
    }
    while (base.size() > scheme_end + 3 and base.back() == '/') {
        base.pop_back();
    }
    return base + "/" + path;
}

auto ToString(Gav const& gav) -> std::string {
    auto s = gav.group_id + ":" + gav.artifact_id + ":";
    if (gav.classifier) {
        return s + gav.packaging + ":" + *gav.classifier + ":" + gav.version;
    }
    if (gav.packaging != "jar") {
        return s + gav.packaging + ":" + gav.version;
    }
    return s + gav.version;
}

}  // namespace canon
