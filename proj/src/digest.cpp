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

#include "canon/digest.hpp"

#include <array>
#include <stdexcept>

#include <openssl/evp.h>

namespace canon {
namespace {

auto HexOf(unsigned char const* data, unsigned int len) -> std::string {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[data[i] >> 4]);
        out.push_back(kHex[data[i] & 0x0F]);
    }
    return out;
}

auto Digest(EVP_MD const* md, std::string_view data) -> std::string {
    std::array<unsigned char, EVP_MAX_MD_SIZE> buf{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), buf.data(), &len, md, nullptr) !=
        1) {
        throw std::runtime_error{"EVP_Digest failed"};
    }
    return HexOf(buf.data(), len);
}

}  // namespace

auto Sha256Hex(std::string_view data) -> std::string {
    return Digest(EVP_sha256(), data);
}

auto Sha1Hex(std::string_view data) -> std::string {
    return Digest(EVP_sha1(), data);
}

}  // namespace canon
