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

#ifndef INCLUDED_CANON_BINARY_HPP
#define INCLUDED_CANON_BINARY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "canon/error.hpp"

namespace canon {

/// Bounds-checked cursor over a byte string. Every overrun throws Error with
/// the code supplied at construction, so format parsers report their own
/// failure class.
class ByteReader {
  public:
    ByteReader(std::string_view data, ErrorCode on_error) noexcept
        : data_{data}, on_error_{on_error} {}

    [[nodiscard]] auto pos() const noexcept -> std::size_t { return pos_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t {
        return data_.size();
    }
    [[nodiscard]] auto remaining() const noexcept -> std::size_t {
        return data_.size() - pos_;
    }
    [[nodiscard]] auto at_end() const noexcept -> bool {
        return pos_ == data_.size();
    }

    void seek(std::size_t pos) {
        if (pos > data_.size()) {
            throw Error{on_error_, "seek past end of data"};
        }
        pos_ = pos;
    }

    void skip(std::size_t n) { (void)bytes(n); }

    auto bytes(std::size_t n) -> std::string_view {
        if (n > remaining()) {
            throw Error{on_error_, "unexpected end of data"};
        }
        auto out = data_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    auto u8() -> std::uint8_t {
        return static_cast<std::uint8_t>(bytes(1)[0]);
    }

    auto u16le() -> std::uint16_t {
        return static_cast<std::uint16_t>(LittleEndian(2));
    }
    auto u32le() -> std::uint32_t {
        return static_cast<std::uint32_t>(LittleEndian(4));
    }
    auto u64le() -> std::uint64_t { return LittleEndian(8); }

    auto u16be() -> std::uint16_t {
        return static_cast<std::uint16_t>(BigEndian(2));
    }
    auto u32be() -> std::uint32_t {
        return static_cast<std::uint32_t>(BigEndian(4));
    }

  private:
    std::string_view data_;
    std::size_t pos_{0};
    ErrorCode on_error_;

    auto LittleEndian(std::size_t n) -> std::uint64_t {
        auto raw = bytes(n);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(raw[i]))
                 << (8 * i);
        }
        return v;
    }

    auto BigEndian(std::size_t n) -> std::uint64_t {
        auto raw = bytes(n);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            v = (v << 8) | static_cast<std::uint8_t>(raw[i]);
        }
        return v;
    }
};

inline void PutU8(std::string* out, std::uint8_t v) {
    out->push_back(static_cast<char>(v));
}

inline void PutU16le(std::string* out, std::uint16_t v) {
    out->push_back(static_cast<char>(v & 0xFF));
    out->push_back(static_cast<char>(v >> 8));
}

inline void PutU32le(std::string* out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

inline void PutU64le(std::string* out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

inline void PutU16be(std::string* out, std::uint16_t v) {
    out->push_back(static_cast<char>(v >> 8));
    out->push_back(static_cast<char>(v & 0xFF));
}

inline void PutU32be(std::string* out, std::uint32_t v) {
    for (int i = 3; i >= 0; --i) {
        out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

/// Overwrites a big-endian u16 in place; used when relocating pool indices.
inline void PatchU16be(std::string* out, std::size_t at, std::uint16_t v) {
    (*out)[at] = static_cast<char>(v >> 8);
    (*out)[at + 1] = static_cast<char>(v & 0xFF);
}

}  // namespace canon

#endif  // INCLUDED_CANON_BINARY_HPP
