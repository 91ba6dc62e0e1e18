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

#ifndef INCLUDED_CANON_ERROR_HPP
#define INCLUDED_CANON_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace canon {

enum class ErrorCode {
    MalformedArchive,
    EntryTooLarge,
    InvalidEntry,
    RecursionLimitExceeded,
    InvalidProfile,
    NotAManifest,
    NotAnSbom,
    MalformedClassfile,
    UnrelocatableAttribute,
    PoolOverflow,
    InvalidGav,
    InvalidUrl,
    NotFound,
    DigestMismatch,
    NetworkError,
    MissingInput,
    IoError,
};

[[nodiscard]] auto ToString(ErrorCode code) noexcept -> std::string_view;

/// Error raised by every operation in this library. The code identifies the
/// failure class; callers branch on it to choose a fallback (for example an
/// archive that fails to parse is compared as opaque bytes).
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string const& message)
        : std::runtime_error{std::string{ToString(code)} + ": " + message},
          code_{code} {}

    [[nodiscard]] auto code() const noexcept -> ErrorCode { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace canon

#endif  // INCLUDED_CANON_ERROR_HPP
