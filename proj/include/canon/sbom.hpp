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

#ifndef INCLUDED_CANON_SBOM_HPP
#define INCLUDED_CANON_SBOM_HPP

#include <string>
#include <string_view>

namespace canon {

/// Which CycloneDX fields to delete.
struct SbomOptions {
    bool serial_number{true};
    bool timestamp{true};
    bool licenses{true};
    bool description{true};
    bool external_references{true};
};

/// JSON documents (bomFormat "CycloneDX") are re-serialized with sorted
/// keys, 2-space indentation and a trailing LF. XML documents in the
/// CycloneDX namespace have the selected elements and the serialNumber
/// attribute cut out textually. Anything else throws Error{NotAnSbom}.
[[nodiscard]] auto CanonicalizeSbom(std::string_view text,
                                    SbomOptions const& options = {})
    -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_SBOM_HPP
