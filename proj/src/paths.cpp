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

#include "canon/paths.hpp"

#include <string>

#include "canon/text.hpp"

namespace canon {
namespace {

auto EndsWith(std::string_view s, std::string_view suffix) -> bool {
    return s.size() >= suffix.size() and
           s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

auto IsManifestPath(std::string_view path) -> bool {
    return EqualsIgnoreCase(path, "META-INF/MANIFEST.MF");
}

auto IsSignatureFile(std::string_view path) -> bool {
    auto lower = ToLowerAscii(path);
    constexpr std::string_view kDir = "meta-inf/";
    if (lower.rfind(kDir, 0) != 0) {
        return false;
    }
    auto name = std::string_view{lower}.substr(kDir.size());
    if (name.empty() or name.find('/') != std::string_view::npos) {
        return false;
    }
    return EndsWith(name, ".sf") or EndsWith(name, ".rsa") or
           EndsWith(name, ".dsa") or EndsWith(name, ".ec") or
           name.rfind("sig-", 0) == 0;
}

auto IsGitProperties(std::string_view path) -> bool {
    auto base = Basename(path);
    return base == "git.properties" or base == "git.json";
}

auto IsPomProperties(std::string_view path) -> bool {
    return path.rfind("META-INF/maven/", 0) == 0 and
           Basename(path) == "pom.properties" and path.back() != '/';
}

auto IsClassfilePath(std::string_view path) -> bool {
    return EndsWith(path, ".class");
}

auto IsModuleInfo(std::string_view path) -> bool {
    return Basename(path) == "module-info.class";
}

auto IsSbomCandidate(std::string_view path, std::string_view payload)
    -> bool {
    auto ext = ExtensionOf(path);
    if (ext != ".json" and ext != ".xml") {
        return false;
    }
    auto lower = ToLowerAscii(Basename(path));
    if (lower.find("cyclonedx") != std::string::npos or
        EndsWith(lower, ".cdx.json") or EndsWith(lower, ".cdx.xml") or
        EndsWith(lower, ".spdx.json")) {
        return true;
    }
    auto head = payload.substr(0, 4096);
    return head.find("CycloneDX") != std::string_view::npos or
           head.find("cyclonedx.org/schema") != std::string_view::npos;
}

}  // namespace canon
