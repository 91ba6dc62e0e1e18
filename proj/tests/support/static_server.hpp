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

#ifndef INCLUDED_CANON_TESTS_STATIC_SERVER_HPP
#define INCLUDED_CANON_TESTS_STATIC_SERVER_HPP

#include <atomic>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "httplib.h"

namespace canon::testing {

/// Serves an in-memory file map on 127.0.0.1 at a random port. Paths that
/// are not in the map answer 404; paths listed in `failing` answer 503.
class StaticServer {
  public:
    StaticServer() {
        server_.Get(R"(/.*)", [this](httplib::Request const& req,
                                     httplib::Response& res) {
            ++hits_;
            std::lock_guard lock{mutex_};
            if (failing_.contains(req.path)) {
                res.status = 503;
                return;
            }
            auto const it = files_.find(req.path);
            if (it == files_.end()) {
                res.status = 404;
                return;
            }
            res.set_content(it->second, "application/octet-stream");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread{[this] { server_.listen_after_bind(); }};
        server_.wait_until_ready();
    }
    StaticServer(StaticServer const&) = delete;
    auto operator=(StaticServer const&) -> StaticServer& = delete;
    ~StaticServer() {
        server_.stop();
        thread_.join();
    }

    void Put(std::string const& path, std::string body) {
        std::lock_guard lock{mutex_};
        files_[path] = std::move(body);
    }

    void Fail(std::string const& path) {
        std::lock_guard lock{mutex_};
        failing_[path] = true;
    }

    [[nodiscard]] auto base_url() const -> std::string {
        return "http://127.0.0.1:" + std::to_string(port_);
    }

    [[nodiscard]] auto hits() const -> std::size_t { return hits_.load(); }

  private:
    httplib::Server server_;
    std::thread thread_;
    int port_{0};
    std::mutex mutex_;
    std::map<std::string, std::string> files_;
    std::map<std::string, bool> failing_;
    std::atomic<std::size_t> hits_{0};
};

}  // namespace canon::testing

#endif  // INCLUDED_CANON_TESTS_STATIC_SERVER_HPP
