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

#ifndef INCLUDED_CANON_PROPERTIES_HPP
#define INCLUDED_CANON_PROPERTIES_HPP

#include <string>
#include <string_view>
#include <vector>

namespace canon {

struct PropertyLine {
    std::string key;   // raw, escapes kept
    std::string text;  // the whole logical line, continuations joined
};

/// Logical key/value lines of a Java properties file. Comments and blank
/// lines are skipped; never throws.
[[nodiscard]] auto ParseProperties(std::string_view text)
    -> std::vector<PropertyLine>;

struct PropertiesOptions {
    /// Drop comments, sort by key, LF endings.
    bool canonical{true};
    /// Drop m2e.* keys written by Eclipse builds.
    bool drop_eclipse_keys{true};
};

[[nodiscard]] auto CanonicalizeProperties(std::string_view text,
                                          PropertiesOptions options = {})
    -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_PROPERTIES_HPP
