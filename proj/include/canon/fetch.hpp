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

#ifndef INCLUDED_CANON_FETCH_HPP
#define INCLUDED_CANON_FETCH_HPP

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "canon/gav.hpp"

namespace canon {

struct FetchOptions {
    std::filesystem::path cache_dir;
    int attempts{3};
    std::chrono::milliseconds initial_backoff{250};
    std::chrono::seconds timeout{30};
};

/// Downloads reference artifacts from a Maven-layout repository. A payload
/// is accepted only when its SHA-1 matches the ".sha1" sidecar. Verified
/// payloads are cached at <cache>/<group>/<artifact>/<version>/<file> and
/// later calls for the same coordinates never touch the network.
/// Safe to share between threads.
class Fetcher {
  public:
    explicit Fetcher(FetchOptions options);

    /// Throws Error{NotFound} on 404, Error{DigestMismatch} when the payload
    /// does not match its sidecar (nothing is cached), Error{NetworkError}
    /// once every attempt failed, Error{InvalidGav} / Error{InvalidUrl}.
    [[nodiscard]] auto FetchReference(Gav const& gav,
                                      std::string_view repo_base)
        -> std::string;

    [[nodiscard]] auto CachePath(Gav const& gav) const
        -> std::filesystem::path;

    /// HTTP requests issued so far, retries included.
    [[nodiscard]] auto network_requests() const noexcept -> std::size_t {
        return requests_.load();
    }

  private:
    [[nodiscard]] auto Get(std::string const& url) -> std::string;

    FetchOptions options_;
    std::atomic<std::size_t> requests_{0};
};

}  // namespace canon

#endif  // INCLUDED_CANON_FETCH_HPP
