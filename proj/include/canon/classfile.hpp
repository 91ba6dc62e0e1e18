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

#ifndef INCLUDED_CANON_CLASSFILE_HPP
#define INCLUDED_CANON_CLASSFILE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace canon {

enum class ConstantTag : std::uint8_t {
    Utf8 = 1,
    Integer = 3,
    Float = 4,
    Long = 5,
    Double = 6,
    Class = 7,
    String = 8,
    Fieldref = 9,
    Methodref = 10,
    InterfaceMethodref = 11,
    NameAndType = 12,
    MethodHandle = 15,
    MethodType = 16,
    Dynamic = 17,
    InvokeDynamic = 18,
    Module = 19,
    Package = 20,
};

/// A constant-pool entry with its references resolved into a value tree.
/// `bytes` holds Utf8 content (modified UTF-8, verbatim) or the raw
/// big-endian numeric value. `extra` holds the MethodHandle reference kind
/// or the bootstrap method index of (Invoke)Dynamic.
struct Constant {
    ConstantTag tag{ConstantTag::Utf8};
    std::string bytes;
    std::vector<Constant> refs;
    std::uint16_t extra{0};

    auto operator==(Constant const&) const -> bool = default;
};

/// A pool index embedded in an attribute body or in bytecode. The index
/// bytes at `offset` are zero in the stored body; writing patches in the
/// index of `value` in the rebuilt pool.
struct PoolRef {
    std::uint32_t offset{0};
    std::uint8_t width{2};
    Constant value;

    auto operator==(PoolRef const&) const -> bool = default;
};

struct AttributeInfo {
    std::string name;
    std::string body;
    std::vector<PoolRef> refs;

    auto operator==(AttributeInfo const&) const -> bool = default;
};

struct ExceptionHandler {
    std::uint16_t start_pc{0};
    std::uint16_t end_pc{0};
    std::uint16_t handler_pc{0};
    std::optional<Constant> catch_type;

    auto operator==(ExceptionHandler const&) const -> bool = default;
};

struct CodeBody {
    std::uint16_t max_stack{0};
    std::uint16_t max_locals{0};
    std::string code;  // instruction bytes, pool indices zeroed
    std::vector<PoolRef> code_refs;
    std::vector<ExceptionHandler> handlers;
    std::vector<AttributeInfo> attributes;

    auto operator==(CodeBody const&) const -> bool = default;
};

/// A field or method. A Code attribute appears in `attributes` as a
/// placeholder named "Code" with an empty body; its content is `code`.
struct MemberInfo {
    std::uint16_t access_flags{0};
    std::string name;
    std::string descriptor;
    std::vector<AttributeInfo> attributes;
    std::optional<CodeBody> code;

    auto operator==(MemberInfo const&) const -> bool = default;
};

struct ClassFile {
    std::uint16_t minor_version{0};
    std::uint16_t major_version{0};
    std::uint16_t access_flags{0};
    std::string this_class;
    std::optional<std::string> super_class;
    std::vector<std::string> interfaces;
    std::vector<MemberInfo> fields;
    std::vector<MemberInfo> methods;
    std::vector<AttributeInfo> attributes;
    /// Names of attributes whose bodies could not be scanned for pool
    /// indices. When non-empty, `original_pool` keeps the parsed pool (slot
    /// 0 and the second slot of wide constants are empty) and the writer
    /// emits it unchanged as a prefix so those bodies stay valid.
    std::vector<std::string> unrelocatable;
    std::vector<std::optional<Constant>> original_pool;

    auto operator==(ClassFile const&) const -> bool = default;
};

/// Throws Error{MalformedClassfile} on bad magic, truncation, dangling or
/// ill-typed pool references, unknown opcodes or duplicate members.
[[nodiscard]] auto ParseClassfile(std::string_view bytes) -> ClassFile;

/// Rebuilds the constant pool in first-use order: ldc operands first (so
/// they fit one byte), then this/super/interfaces, fields, methods and class
/// attributes. Throws Error{PoolOverflow} past 65534 slots or when an ldc
/// operand does not fit.
[[nodiscard]] auto WriteClassfile(ClassFile const& cf) -> std::string;

struct ClassfileOptions {
    bool sort_members{true};
    bool strip_debug{true};
    bool sort_inner_classes{true};
    bool sort_annotation_arrays{false};
};

/// Throws Error{UnrelocatableAttribute} when `cf.unrelocatable` is not empty.
[[nodiscard]] auto CanonicalizeClassfile(ClassFile cf,
                                         ClassfileOptions const& options = {})
    -> ClassFile;

/// Human-readable one-line rendering, e.g. Methodref java/lang/Object.<init>:()V.
[[nodiscard]] auto Describe(Constant const& c) -> std::string;

/// Disassembly-style listing used for classfile diffs. Pool indices never
/// appear, so two classfiles that differ only in pool layout render equal.
[[nodiscard]] auto RenderClassfile(ClassFile const& cf) -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_CLASSFILE_HPP
