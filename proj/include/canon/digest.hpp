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

#ifndef INCLUDED_CANON_DIGEST_HPP
#define INCLUDED_CANON_DIGEST_HPP

#include <string>
#include <string_view>

namespace canon {

/// Lowercase hex SHA-256 of data. Used for report digests.
[[nodiscard]] auto Sha256Hex(std::string_view data) -> std::string;

/// Lowercase hex SHA-1 of data. Used to check registry sidecar files.
[[nodiscard]] auto Sha1Hex(std::string_view data) -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_DIGEST_HPP
