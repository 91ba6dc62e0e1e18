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

#include "canon/io.hpp"

#include <atomic>
#include <fstream>
#include <iterator>
#include <system_error>
#include <thread>

#include "canon/error.hpp"

namespace canon {

auto ReadFileBytes(std::filesystem::path const& path) -> std::string {
    std::error_code ec;
    if (not std::filesystem::is_regular_file(path, ec)) {
        throw Error{ErrorCode::MissingInput, path.string()};
    }
    std::ifstream in{path, std::ios::binary};
    if (not in) {
        throw Error{ErrorCode::IoError, "cannot open " + path.string()};
    }
    std::string data{std::istreambuf_iterator<char>{in},
                     std::istreambuf_iterator<char>{}};
    if (in.bad()) {
        throw Error{ErrorCode::IoError, "cannot read " + path.string()};
    }
    return data;
}

void WriteFileAtomic(std::filesystem::path const& path, std::string_view data) {
    static std::atomic<unsigned> counter{0};
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw Error{ErrorCode::IoError,
                        "cannot create " + path.parent_path().string() +
                            ": " + ec.message()};
        }
    }
    auto tmp = path;
    tmp += ".tmp." +
           std::to_string(std::hash<std::thread::id>{}(
               std::this_thread::get_id())) +
           "." + std::to_string(counter++);
    {
        std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (not out) {
            std::filesystem::remove(tmp, ec);
            throw Error{ErrorCode::IoError, "cannot write " + tmp.string()};
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error{ErrorCode::IoError, "cannot rename into " + path.string()};
    }
}

}  // namespace canon
