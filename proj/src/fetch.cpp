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

#include "canon/fetch.hpp"

#include <algorithm>
#include <cctype>
#include <thread>
#include <utility>

#include "canon/digest.hpp"
#include "canon/error.hpp"
#include "canon/io.hpp"
#include "httplib.h"

namespace canon {

namespace {

struct Url {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

auto SplitUrl(std::string const& url) -> Url {
    auto const scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error{ErrorCode::InvalidUrl, url};
    }
    auto const path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return Url{url, "/"};
    }
    return Url{url.substr(0, path_start), url.substr(path_start)};
}

// First token of the sidecar, which may be followed by a file name.
auto SidecarDigest(std::string const& body) -> std::string {
    std::string token;
    for (char c : body) {
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            if (not token.empty()) {
                break;
            }
            continue;
        }
        token.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(c))));
    }
    return token;
}

}  // namespace

Fetcher::Fetcher(FetchOptions options) : options_{std::move(options)} {}

auto Fetcher::CachePath(Gav const& gav) const -> std::filesystem::path {
    return options_.cache_dir / gav.group_id / gav.artifact_id / gav.version /
           ArtifactFileName(gav);
}

auto Fetcher::Get(std::string const& url) -> std::string {
    auto const parts = SplitUrl(url);
    auto backoff = options_.initial_backoff;
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt < std::max(options_.attempts, 1);
         ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
        ++requests_;
        httplib::Client client{parts.origin};
        client.set_connection_timeout(options_.timeout);
        client.set_read_timeout(options_.timeout);
        client.set_follow_location(true);
        auto response = client.Get(parts.path);
        if (not response) {
            last_error = httplib::to_string(response.error());
            continue;
        }
        if (response->status == 200) {
            return response->body;
        }
        if (response->status == 404 or response->status == 410) {
            throw Error{ErrorCode::NotFound, url};
        }
        last_error = "HTTP " + std::to_string(response->status);
        if (response->status < 500 and response->status != 429) {
            break;
        }
    }
    throw Error{ErrorCode::NetworkError, url + ": " + last_error};
}

auto Fetcher::FetchReference(Gav const& gav, std::string_view repo_base)
    -> std::string {
    auto const url = ResolveArtifactUrl(gav, repo_base);
    auto const cached = CachePath(gav);
    std::error_code ec;
    if (std::filesystem::is_regular_file(cached, ec)) {
        return ReadFileBytes(cached);
    }
    auto payload = Get(url);
    auto const expected = SidecarDigest(Get(url + ".sha1"));
    auto const actual = Sha1Hex(payload);
    if (expected != actual) {
        throw Error{ErrorCode::DigestMismatch,
                    url + ": sidecar " + expected + ", payload " + actual};
    }
    WriteFileAtomic(cached, payload);
    return payload;
}

}  // namespace canon
