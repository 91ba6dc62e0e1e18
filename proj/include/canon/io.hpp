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

#ifndef INCLUDED_CANON_IO_HPP
#define INCLUDED_CANON_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace canon {

/// Whole file as bytes. Throws Error{MissingInput} when the file does not
/// exist, Error{IoError} when it cannot be read.
[[nodiscard]] auto ReadFileBytes(std::filesystem::path const& path)
    -> std::string;

/// Writes to a sibling temporary file and renames it into place, creating
/// parent directories. Throws Error{IoError}.
void WriteFileAtomic(std::filesystem::path const& path, std::string_view data);

}  // namespace canon

#endif  // INCLUDED_CANON_IO_HPP
