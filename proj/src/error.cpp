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

#include "canon/error.hpp"

namespace canon {

auto ToString(ErrorCode code) noexcept -> std::string_view {
    switch (code) {
        case ErrorCode::MalformedArchive:
            return "MalformedArchive";
        case ErrorCode::EntryTooLarge:
            return "EntryTooLarge";
        case ErrorCode::InvalidEntry:
            return "InvalidEntry";
        case ErrorCode::RecursionLimitExceeded:
            return "RecursionLimitExceeded";
        case ErrorCode::InvalidProfile:
            return "InvalidProfile";
        case ErrorCode::NotAManifest:
            return "NotAManifest";
        case ErrorCode::NotAnSbom:
            return "NotAnSbom";
        case ErrorCode::MalformedClassfile:
            return "MalformedClassfile";
        case ErrorCode::UnrelocatableAttribute:
            return "UnrelocatableAttribute";
        case ErrorCode::PoolOverflow:
            return "PoolOverflow";
        case ErrorCode::InvalidGav:
            return "InvalidGav";
        case ErrorCode::InvalidUrl:
            return "InvalidUrl";
        case ErrorCode::NotFound:
            return "NotFound";
        case ErrorCode::DigestMismatch:
            return "DigestMismatch";
        case ErrorCode::NetworkError:
            return "NetworkError";
        case ErrorCode::MissingInput:
            return "MissingInput";
        case ErrorCode::IoError:
            return "IoError";
    }
    return "Unknown";
}

}  // namespace canon
