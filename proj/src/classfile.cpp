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

#include "canon/classfile.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

#include "canon/binary.hpp"
#include "canon/digest.hpp"
#include "canon/error.hpp"

namespace canon {
namespace {

constexpr std::uint32_t kMagic = 0xCAFEBABE;
constexpr std::uint32_t kMaxPoolSlots = 65535;  // count field; last index 65534

[[noreturn]] void Malformed(std::string const& what) {
    throw Error{ErrorCode::MalformedClassfile, what};
}

auto IsWide(ConstantTag tag) -> bool {
    return tag == ConstantTag::Long or tag == ConstantTag::Double;
}

auto IsMemberRef(ConstantTag tag) -> bool {
    return tag == ConstantTag::Fieldref or tag == ConstantTag::Methodref or
           tag == ConstantTag::InterfaceMethodref;
}

/// Injective encoding of a constant value, used to deduplicate the pool.
void AppendKey(std::string* out, Constant const& c) {
    out->push_back(static_cast<char>(c.tag));
    PutU16be(out, c.extra);
    PutU32be(out, static_cast<std::uint32_t>(c.bytes.size()));
    out->append(c.bytes);
    out->push_back(static_cast<char>(c.refs.size()));
    for (auto const& child : c.refs) {
        AppendKey(out, child);
    }
}

auto Key(Constant const& c) -> std::string {
    std::string out;
    AppendKey(&out, c);
    return out;
}

auto Utf8(std::string s) -> Constant {
    return Constant{ConstantTag::Utf8, std::move(s), {}, 0};
}

auto ClassRef(std::string name) -> Constant {
    return Constant{ConstantTag::Class, {}, {Utf8(std::move(name))}, 0};
}

// ---------------------------------------------------------------------------
// Parsing

struct RawConstant {
    bool present{false};
    ConstantTag tag{ConstantTag::Utf8};
    std::string bytes;
    std::uint16_t a{0};
    std::uint16_t b{0};
};

class Parser;

/// Walks an attribute body, zeroing and recording pool indices.
class Scan {
  public:
    Scan(Parser* parser, std::string_view body)
        : parser_{parser},
          reader_{body, ErrorCode::MalformedClassfile},
          out_{body} {}

    auto r() -> ByteReader& { return reader_; }

    /// Reads a u2 pool index; zero is accepted only when allowed.
    auto Ref(bool allow_zero = false) -> Constant const*;

    /// The one-byte operand of ldc.
    void Ref1();

    void MarkUnrelocatable(std::string name);

    [[nodiscard]] auto Finish(std::string name) -> AttributeInfo {
        if (not reader_.at_end()) {
            Malformed("trailing bytes in attribute " + name);
        }
        return AttributeInfo{std::move(name), std::move(out_),
                             std::move(refs_)};
    }

    [[nodiscard]] auto FinishCode() -> std::pair<std::string, std::vector<PoolRef>> {
        return {std::move(out_), std::move(refs_)};
    }

  private:
    Parser* parser_;
    ByteReader reader_;
    std::string out_;
    std::vector<PoolRef> refs_;
};

class Parser {
  public:
    explicit Parser(std::string_view bytes)
        : reader_{bytes, ErrorCode::MalformedClassfile} {}

    auto Run() -> ClassFile;

    auto Resolve(std::uint32_t index) -> Constant const&;

    auto ResolveUtf8(std::uint32_t index) -> std::string const& {
        auto const& c = Resolve(index);
        if (c.tag != ConstantTag::Utf8) {
            Malformed("expected Utf8 at pool index " + std::to_string(index));
        }
        return c.bytes;
    }

    auto ResolveClassName(std::uint32_t index) -> std::string const& {
        auto const& c = Resolve(index);
        if (c.tag != ConstantTag::Class) {
            Malformed("expected Class at pool index " + std::to_string(index));
        }
        return c.refs.front().bytes;
    }

    void AddUnrelocatable(std::string name) {
        unrelocatable_.push_back(std::move(name));
    }

    /// Scans attribute `name` from the scan's current position up to `end`.
    void ScanBody(Scan* s, std::string const& name, std::size_t end);

  private:
    ByteReader reader_;
    std::vector<RawConstant> raw_;
    std::vector<std::optional<Constant>> resolved_;
    std::vector<std::uint8_t> state_;
    std::vector<std::string> unrelocatable_;

    void ReadPool();
    auto ReadAttributes(bool in_code) -> std::pair<std::vector<AttributeInfo>,
                                                   std::optional<CodeBody>>;
    auto ReadMembers(bool methods) -> std::vector<MemberInfo>;
    auto ReadCode(std::string_view body) -> CodeBody;
    void ScanInstructions(Scan* s);
    void ScanElementValue(Scan* s);
    void ScanAnnotation(Scan* s);
    void ScanTypeAnnotation(Scan* s);
    void ScanVerificationType(Scan* s);
};

auto Scan::Ref(bool allow_zero) -> Constant const* {
    auto at = reader_.pos();
    auto index = reader_.u16be();
    if (index == 0) {
        if (not allow_zero) {
            Malformed("zero pool index");
        }
        return nullptr;
    }
    auto const& c = parser_->Resolve(index);
    refs_.push_back(PoolRef{static_cast<std::uint32_t>(at), 2, c});
    out_[at] = 0;
    out_[at + 1] = 0;
    return &refs_.back().value;
}

void Scan::Ref1() {
    auto at = reader_.pos();
    auto index = reader_.u8();
    if (index == 0) {
        Malformed("zero ldc operand");
    }
    refs_.push_back(PoolRef{static_cast<std::uint32_t>(at), 1,
                            parser_->Resolve(index)});
    out_[at] = 0;
}

void Scan::MarkUnrelocatable(std::string name) {
    parser_->AddUnrelocatable(std::move(name));
}

void Parser::ReadPool() {
    auto count = reader_.u16be();
    if (count == 0) {
        Malformed("constant pool count is zero");
    }
    raw_.resize(count);
    for (std::uint32_t i = 1; i < count; ++i) {
        RawConstant c;
        c.present = true;
        auto tag = reader_.u8();
        c.tag = static_cast<ConstantTag>(tag);
        switch (c.tag) {
            case ConstantTag::Utf8: {
                auto len = reader_.u16be();
                c.bytes = std::string{reader_.bytes(len)};
                break;
            }
            case ConstantTag::Integer:
            case ConstantTag::Float:
                c.bytes = std::string{reader_.bytes(4)};
                break;
            case ConstantTag::Long:
            case ConstantTag::Double:
                c.bytes = std::string{reader_.bytes(8)};
                break;
            case ConstantTag::Class:
            case ConstantTag::String:
            case ConstantTag::MethodType:
            case ConstantTag::Module:
            case ConstantTag::Package:
                c.a = reader_.u16be();
                break;
            case ConstantTag::Fieldref:
            case ConstantTag::Methodref:
            case ConstantTag::InterfaceMethodref:
            case ConstantTag::NameAndType:
            case ConstantTag::Dynamic:
            case ConstantTag::InvokeDynamic:
                c.a = reader_.u16be();
                c.b = reader_.u16be();
                break;
            case ConstantTag::MethodHandle:
                c.a = reader_.u8();
                c.b = reader_.u16be();
                if (c.a < 1 or c.a > 9) {
                    Malformed("bad MethodHandle kind");
                }
                break;
            default:
                Malformed("unknown constant tag " + std::to_string(tag));
        }
        raw_[i] = std::move(c);
        if (IsWide(raw_[i].tag)) {
            ++i;
            if (i >= count) {
                Malformed("wide constant in last pool slot");
            }
        }
    }
    resolved_.resize(count);
    state_.assign(count, 0);
}

auto Parser::Resolve(std::uint32_t index) -> Constant const& {
    if (index == 0 or index >= raw_.size() or not raw_[index].present) {
        Malformed("dangling pool index " + std::to_string(index));
    }
    if (state_[index] == 2) {
        return *resolved_[index];
    }
    if (state_[index] == 1) {
        Malformed("cyclic constant pool reference");
    }
    state_[index] = 1;
    auto const& raw = raw_[index];
    Constant c;
    c.tag = raw.tag;
    auto expect = [this](std::uint16_t i, auto&& ok,
                         char const* what) -> Constant {
        auto const& child = Resolve(i);
        if (not ok(child.tag)) {
            Malformed(std::string{"pool entry is not "} + what);
        }
        return child;
    };
    auto is = [](ConstantTag want) {
        return [want](ConstantTag t) { return t == want; };
    };
    switch (raw.tag) {
        case ConstantTag::Utf8:
        case ConstantTag::Integer:
        case ConstantTag::Float:
        case ConstantTag::Long:
        case ConstantTag::Double:
            c.bytes = raw.bytes;
            break;
        case ConstantTag::Class:
        case ConstantTag::String:
        case ConstantTag::MethodType:
        case ConstantTag::Module:
        case ConstantTag::Package:
            c.refs.push_back(expect(raw.a, is(ConstantTag::Utf8), "Utf8"));
            break;
        case ConstantTag::Fieldref:
        case ConstantTag::Methodref:
        case ConstantTag::InterfaceMethodref:
            c.refs.push_back(expect(raw.a, is(ConstantTag::Class), "Class"));
            c.refs.push_back(
                expect(raw.b, is(ConstantTag::NameAndType), "NameAndType"));
            break;
        case ConstantTag::NameAndType:
            c.refs.push_back(expect(raw.a, is(ConstantTag::Utf8), "Utf8"));
            c.refs.push_back(expect(raw.b, is(ConstantTag::Utf8), "Utf8"));
            break;
        case ConstantTag::MethodHandle:
            c.extra = raw.a;
            c.refs.push_back(expect(raw.b, IsMemberRef, "a member reference"));
            break;
        case ConstantTag::Dynamic:
        case ConstantTag::InvokeDynamic:
            c.extra = raw.a;
            c.refs.push_back(
                expect(raw.b, is(ConstantTag::NameAndType), "NameAndType"));
            break;
    }
    resolved_[index] = std::move(c);
    state_[index] = 2;
    return *resolved_[index];
}

void Parser::ScanVerificationType(Scan* s) {
    auto tag = s->r().u8();
    if (tag <= 6) {
        return;
    }
    if (tag == 7) {
        (void)s->Ref();
        return;
    }
    if (tag == 8) {
        s->r().skip(2);
        return;
    }
    Malformed("bad verification type tag");
}

void Parser::ScanElementValue(Scan* s) {
    auto tag = static_cast<char>(s->r().u8());
    switch (tag) {
        case 'B':
        case 'C':
        case 'D':
        case 'F':
        case 'I':
        case 'J':
        case 'S':
        case 'Z':
        case 's':
        case 'c':
            (void)s->Ref();
            return;
        case 'e':
            (void)s->Ref();
            (void)s->Ref();
            return;
        case '@':
            ScanAnnotation(s);
            return;
        case '[': {
            auto n = s->r().u16be();
            for (std::uint32_t i = 0; i < n; ++i) {
                ScanElementValue(s);
            }
            return;
        }
        default:
            Malformed("bad element_value tag");
    }
}

void Parser::ScanAnnotation(Scan* s) {
    (void)s->Ref();
    auto pairs = s->r().u16be();
    for (std::uint32_t i = 0; i < pairs; ++i) {
        (void)s->Ref();
        ScanElementValue(s);
    }
}

void Parser::ScanTypeAnnotation(Scan* s) {
    auto& r = s->r();
    auto target = r.u8();
    switch (target) {
        case 0x00:
        case 0x01:
        case 0x16:
            r.skip(1);
            break;
        case 0x10:
        case 0x17:
        case 0x42:
        case 0x43:
        case 0x44:
        case 0x45:
        case 0x46:
            r.skip(2);
            break;
        case 0x11:
        case 0x12:
            r.skip(2);
            break;
        case 0x13:
        case 0x14:
        case 0x15:
            break;
        case 0x40:
        case 0x41: {
            auto n = r.u16be();
            r.skip(static_cast<std::size_t>(n) * 6);
            break;
        }
        case 0x47:
        case 0x48:
        case 0x49:
        case 0x4A:
        case 0x4B:
            r.skip(3);
            break;
        default:
            Malformed("bad type annotation target");
    }
    auto path_len = r.u8();
    r.skip(static_cast<std::size_t>(path_len) * 2);
    ScanAnnotation(s);
}

void Parser::ScanBody(Scan* s, std::string const& name, std::size_t end) {
    auto& r = s->r();
    auto count16 = [&r] { return static_cast<std::uint32_t>(r.u16be()); };
    if (name == "ConstantValue" or name == "Signature" or
        name == "SourceFile" or name == "NestHost" or
        name == "ModuleMainClass") {
        (void)s->Ref();
    }
    else if (name == "Exceptions" or name == "NestMembers" or
             name == "PermittedSubclasses" or name == "ModulePackages") {
        for (auto n = count16(); n > 0; --n) {
            (void)s->Ref();
        }
    }
    else if (name == "InnerClasses") {
        for (auto n = count16(); n > 0; --n) {
            (void)s->Ref();
            (void)s->Ref(true);
            (void)s->Ref(true);
            r.skip(2);
        }
    }
    else if (name == "EnclosingMethod") {
        (void)s->Ref();
        (void)s->Ref(true);
    }
    else if (name == "LineNumberTable") {
        r.skip(static_cast<std::size_t>(count16()) * 4);
    }
    else if (name == "LocalVariableTable" or
             name == "LocalVariableTypeTable") {
        for (auto n = count16(); n > 0; --n) {
            r.skip(4);
            (void)s->Ref();
            (void)s->Ref();
            r.skip(2);
        }
    }
    else if (name == "StackMapTable") {
        for (auto n = count16(); n > 0; --n) {
            auto type = r.u8();
            if (type <= 63) {
                continue;
            }
            if (type <= 127) {
                ScanVerificationType(s);
            }
            else if (type < 247) {
                Malformed("reserved stack map frame type");
            }
            else if (type == 247) {
                r.skip(2);
                ScanVerificationType(s);
            }
            else if (type <= 251) {
                r.skip(2);
            }
            else if (type <= 254) {
                r.skip(2);
                for (int i = 0; i < type - 251; ++i) {
                    ScanVerificationType(s);
                }
            }
            else {
                r.skip(2);
                for (auto locals = count16(); locals > 0; --locals) {
                    ScanVerificationType(s);
                }
                for (auto stack = count16(); stack > 0; --stack) {
                    ScanVerificationType(s);
                }
            }
        }
    }
    else if (name == "RuntimeVisibleAnnotations" or
             name == "RuntimeInvisibleAnnotations") {
        for (auto n = count16(); n > 0; --n) {
            ScanAnnotation(s);
        }
    }
    else if (name == "RuntimeVisibleParameterAnnotations" or
             name == "RuntimeInvisibleParameterAnnotations") {
        for (auto params = r.u8(); params > 0; --params) {
            for (auto n = count16(); n > 0; --n) {
                ScanAnnotation(s);
            }
        }
    }
    else if (name == "RuntimeVisibleTypeAnnotations" or
             name == "RuntimeInvisibleTypeAnnotations") {
        for (auto n = count16(); n > 0; --n) {
            ScanTypeAnnotation(s);
        }
    }
    else if (name == "AnnotationDefault") {
        ScanElementValue(s);
    }
    else if (name == "BootstrapMethods") {
        for (auto n = count16(); n > 0; --n) {
            (void)s->Ref();
            for (auto args = count16(); args > 0; --args) {
                (void)s->Ref();
            }
        }
    }
    else if (name == "MethodParameters") {
        for (auto n = r.u8(); n > 0; --n) {
            (void)s->Ref(true);
            r.skip(2);
        }
    }
    else if (name == "Record") {
        for (auto n = count16(); n > 0; --n) {
            (void)s->Ref();
            (void)s->Ref();
            for (auto attrs = count16(); attrs > 0; --attrs) {
                auto const* name_constant = s->Ref();
                if (name_constant->tag != ConstantTag::Utf8) {
                    Malformed("attribute name is not Utf8");
                }
                auto const nested_name = name_constant->bytes;
                auto const length = r.u32be();
                auto const nested_end = r.pos() + length;
                if (nested_end > end) {
                    Malformed("nested attribute overruns Record");
                }
                ScanBody(s, nested_name, nested_end);
            }
        }
    }
    else if (name == "Module") {
        (void)s->Ref();
        r.skip(2);
        (void)s->Ref(true);
        for (auto n = count16(); n > 0; --n) {  // requires
            (void)s->Ref();
            r.skip(2);
            (void)s->Ref(true);
        }
        for (int table = 0; table < 2; ++table) {  // exports, opens
            for (auto n = count16(); n > 0; --n) {
                (void)s->Ref();
                r.skip(2);
                for (auto to = count16(); to > 0; --to) {
                    (void)s->Ref();
                }
            }
        }
        for (auto n = count16(); n > 0; --n) {  // uses
            (void)s->Ref();
        }
        for (auto n = count16(); n > 0; --n) {  // provides
            (void)s->Ref();
            for (auto with = count16(); with > 0; --with) {
                (void)s->Ref();
            }
        }
    }
    else if (name == "SourceDebugExtension" or name == "Deprecated" or
             name == "Synthetic") {
        r.skip(end - r.pos());
    }
    else {
        if (end > r.pos()) {
            s->MarkUnrelocatable(name);
        }
        r.skip(end - r.pos());
    }
    if (r.pos() != end) {
        Malformed("attribute " + name + " has inconsistent length");
    }
}

void Parser::ScanInstructions(Scan* s) {
    auto& r = s->r();
    while (not r.at_end()) {
        auto const start = r.pos();
        auto op = r.u8();
        if (op <= 0x0F or (op >= 0x1A and op <= 0x35) or
            (op >= 0x3B and op <= 0x83) or (op >= 0x85 and op <= 0x98) or
            (op >= 0xAC and op <= 0xB1) or op == 0xBE or op == 0xBF or
            op == 0xC2 or op == 0xC3 or op == 0xCA) {
            continue;
        }
        switch (op) {
            case 0x10:
            case 0xBC:
            case 0xA9:
                r.skip(1);
                break;
            case 0x11:
                r.skip(2);
                break;
            case 0x12:
                s->Ref1();
                break;
            case 0x13:
            case 0x14:
            case 0xB2:
            case 0xB3:
            case 0xB4:
            case 0xB5:
            case 0xB6:
            case 0xB7:
            case 0xB8:
            case 0xBB:
            case 0xBD:
            case 0xC0:
            case 0xC1:
                (void)s->Ref();
                break;
            case 0xB9:
            case 0xBA:
                (void)s->Ref();
                r.skip(2);
                break;
            case 0xC5:
                (void)s->Ref();
                r.skip(1);
                break;
            case 0x84:
                r.skip(2);
                break;
            case 0xC8:
            case 0xC9:
                r.skip(4);
                break;
            case 0xAA: {
                r.skip((4 - (start + 1) % 4) % 4);
                r.skip(4);
                auto low = static_cast<std::int32_t>(r.u32be());
                auto high = static_cast<std::int32_t>(r.u32be());
                if (high < low) {
                    Malformed("tableswitch high < low");
                }
                r.skip((static_cast<std::size_t>(
                           static_cast<std::int64_t>(high) - low + 1)) *
                       4);
                break;
            }
            case 0xAB: {
                r.skip((4 - (start + 1) % 4) % 4);
                r.skip(4);
                auto pairs = static_cast<std::int32_t>(r.u32be());
                if (pairs < 0) {
                    Malformed("negative lookupswitch pair count");
                }
                r.skip(static_cast<std::size_t>(pairs) * 8);
                break;
            }
            case 0xC4: {
                auto op2 = r.u8();
                if (op2 == 0x84) {
                    r.skip(4);
                }
                else if ((op2 >= 0x15 and op2 <= 0x19) or
                         (op2 >= 0x36 and op2 <= 0x3A) or op2 == 0xA9) {
                    r.skip(2);
                }
                else {
                    Malformed("bad wide opcode");
                }
                break;
            }
            default:
                if ((op >= 0x15 and op <= 0x19) or (op >= 0x36 and op <= 0x3A)) {
                    r.skip(1);
                }
                else if ((op >= 0x99 and op <= 0xA8) or op == 0xC6 or
                         op == 0xC7) {
                    r.skip(2);
                }
                else {
                    Malformed("unknown opcode " + std::to_string(op));
                }
        }
    }
}

auto Parser::ReadCode(std::string_view body) -> CodeBody {
    ByteReader r{body, ErrorCode::MalformedClassfile};
    CodeBody code;
    code.max_stack = r.u16be();
    code.max_locals = r.u16be();
    auto length = r.u32be();
    if (length == 0) {
        Malformed("empty Code attribute");
    }
    auto insns = r.bytes(length);
    Scan scan{this, insns};
    ScanInstructions(&scan);
    std::tie(code.code, code.code_refs) = scan.FinishCode();
    for (auto n = r.u16be(); n > 0; --n) {
        ExceptionHandler h;
        h.start_pc = r.u16be();
        h.end_pc = r.u16be();
        h.handler_pc = r.u16be();
        if (auto type = r.u16be(); type != 0) {
            if (Resolve(type).tag != ConstantTag::Class) {
                Malformed("catch type is not a Class");
            }
            h.catch_type = Resolve(type);
        }
        code.handlers.push_back(std::move(h));
    }
    // Reuse the class-level attribute reader on the remaining bytes.
    auto saved = reader_;
    reader_ = ByteReader{body.substr(r.pos()), ErrorCode::MalformedClassfile};
    auto [attrs, nested] = ReadAttributes(true);
    if (not reader_.at_end()) {
        Malformed("trailing bytes in Code attribute");
    }
    reader_ = saved;
    code.attributes = std::move(attrs);
    return code;
}

auto Parser::ReadAttributes(bool in_code)
    -> std::pair<std::vector<AttributeInfo>, std::optional<CodeBody>> {
    std::vector<AttributeInfo> attrs;
    std::optional<CodeBody> code;
    for (auto n = reader_.u16be(); n > 0; --n) {
        auto name = ResolveUtf8(reader_.u16be());
        auto length = reader_.u32be();
        auto body = reader_.bytes(length);
        if (name == "Code") {
            if (in_code or code) {
                Malformed("misplaced or repeated Code attribute");
            }
            code = ReadCode(body);
            attrs.push_back(AttributeInfo{"Code", {}, {}});
            continue;
        }
        Scan scan{this, body};
        ScanBody(&scan, name, body.size());
        attrs.push_back(scan.Finish(name));
    }
    return {std::move(attrs), std::move(code)};
}

auto Parser::ReadMembers(bool methods) -> std::vector<MemberInfo> {
    std::vector<MemberInfo> members;
    std::set<std::pair<std::string, std::string>> seen;
    for (auto n = reader_.u16be(); n > 0; --n) {
        MemberInfo m;
        m.access_flags = reader_.u16be();
        m.name = ResolveUtf8(reader_.u16be());
        m.descriptor = ResolveUtf8(reader_.u16be());
        auto [attrs, code] = ReadAttributes(false);
        if (code and not methods) {
            Malformed("Code attribute on a field");
        }
        m.attributes = std::move(attrs);
        m.code = std::move(code);
        if (not seen.emplace(m.name, m.descriptor).second) {
            Malformed("duplicate member " + m.name + m.descriptor);
        }
        members.push_back(std::move(m));
    }
    return members;
}

auto Parser::Run() -> ClassFile {
    if (reader_.size() < 4 or reader_.u32be() != kMagic) {
        Malformed("bad magic");
    }
    ClassFile cf;
    cf.minor_version = reader_.u16be();
    cf.major_version = reader_.u16be();
    ReadPool();
    cf.access_flags = reader_.u16be();
    cf.this_class = ResolveClassName(reader_.u16be());
    if (auto super = reader_.u16be(); super != 0) {
        cf.super_class = ResolveClassName(super);
    }
    for (auto n = reader_.u16be(); n > 0; --n) {
        cf.interfaces.push_back(ResolveClassName(reader_.u16be()));
    }
    cf.fields = ReadMembers(false);
    cf.methods = ReadMembers(true);
    auto [attrs, code] = ReadAttributes(false);
    if (code) {
        Malformed("Code attribute on a class");
    }
    cf.attributes = std::move(attrs);
    if (not reader_.at_end()) {
        Malformed("trailing bytes after class");
    }
    cf.unrelocatable = unrelocatable_;
    if (not cf.unrelocatable.empty()) {
        cf.original_pool.resize(raw_.size());
        for (std::uint32_t i = 1; i < raw_.size(); ++i) {
            if (raw_[i].present) {
                cf.original_pool[i] = Resolve(i);
            }
        }
    }
    return cf;
}

// ---------------------------------------------------------------------------
// Writing

class PoolBuilder {
  public:
    void Preload(std::vector<std::optional<Constant>> const& pool) {
        if (pool.size() > kMaxPoolSlots) {
            throw Error{ErrorCode::PoolOverflow, "constant pool too large"};
        }
        slots_.assign(pool.size(), {});
        for (std::size_t i = 1; i < pool.size(); ++i) {
            if (pool[i]) {
                index_.emplace(Key(*pool[i]),
                               static_cast<std::uint16_t>(i));
            }
        }
        next_ = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(pool.size()));
        for (std::size_t i = 1; i < pool.size(); ++i) {
            if (pool[i]) {
                slots_[i] = Encode(*pool[i]);
            }
        }
    }

    auto Intern(Constant const& c) -> std::uint16_t {
        auto key = Key(c);
        if (auto it = index_.find(key); it != index_.end()) {
            return it->second;
        }
        auto const index = next_;
        next_ += IsWide(c.tag) ? 2 : 1;
        if (next_ > kMaxPoolSlots) {
            throw Error{ErrorCode::PoolOverflow,
                        "more than 65534 constant pool slots"};
        }
        index_.emplace(std::move(key), static_cast<std::uint16_t>(index));
        slots_.resize(next_);
        auto encoded = Encode(c);
        slots_[index] = std::move(encoded);
        return static_cast<std::uint16_t>(index);
    }

    auto Utf8Index(std::string const& s) -> std::uint16_t {
        return Intern(Utf8(s));
    }

    [[nodiscard]] auto Count() const -> std::uint16_t {
        return static_cast<std::uint16_t>(next_);
    }

    [[nodiscard]] auto Serialize() const -> std::string {
        std::string out;
        for (auto const& s : slots_) {
            out += s;
        }
        return out;
    }

  private:
    std::vector<std::string> slots_{1};
    std::unordered_map<std::string, std::uint16_t> index_;
    std::uint32_t next_{1};

    auto Encode(Constant const& c) -> std::string {
        std::string out;
        out.push_back(static_cast<char>(c.tag));
        switch (c.tag) {
            case ConstantTag::Utf8:
                if (c.bytes.size() > 0xFFFF) {
                    throw Error{ErrorCode::MalformedClassfile,
                                "Utf8 constant longer than 65535 bytes"};
                }
                PutU16be(&out, static_cast<std::uint16_t>(c.bytes.size()));
                out += c.bytes;
                break;
            case ConstantTag::Integer:
            case ConstantTag::Float:
            case ConstantTag::Long:
            case ConstantTag::Double:
                out += c.bytes;
                break;
            case ConstantTag::MethodHandle:
                PutU8(&out, static_cast<std::uint8_t>(c.extra));
                PutU16be(&out, Intern(c.refs.at(0)));
                break;
            case ConstantTag::Dynamic:
            case ConstantTag::InvokeDynamic:
                PutU16be(&out, c.extra);
                PutU16be(&out, Intern(c.refs.at(0)));
                break;
            default:
                for (auto const& child : c.refs) {
                    PutU16be(&out, Intern(child));
                }
        }
        return out;
    }
};

class Writer {
  public:
    explicit Writer(ClassFile const& cf) : cf_{cf} {}

    auto Run() -> std::string {
        if (not cf_.original_pool.empty()) {
            pool_.Preload(cf_.original_pool);
        }
        for (auto const& m : cf_.methods) {
            if (not m.code) {
                continue;
            }
            for (auto const& ref : m.code->code_refs) {
                if (ref.width == 1) {
                    (void)pool_.Intern(ref.value);
                }
            }
        }
        std::string body;
        PutU16be(&body, cf_.access_flags);
        PutU16be(&body, pool_.Intern(ClassRef(cf_.this_class)));
        PutU16be(&body, cf_.super_class ? pool_.Intern(ClassRef(*cf_.super_class))
                                        : std::uint16_t{0});
        PutU16be(&body, Count16(cf_.interfaces.size()));
        for (auto const& i : cf_.interfaces) {
            PutU16be(&body, pool_.Intern(ClassRef(i)));
        }
        WriteMembers(&body, cf_.fields);
        WriteMembers(&body, cf_.methods);
        WriteAttributes(&body, cf_.attributes, nullptr);

        std::string out;
        PutU32be(&out, kMagic);
        PutU16be(&out, cf_.minor_version);
        PutU16be(&out, cf_.major_version);
        PutU16be(&out, pool_.Count());
        out += pool_.Serialize();
        out += body;
        return out;
    }

  private:
    ClassFile const& cf_;
    PoolBuilder pool_;

    static auto Count16(std::size_t n) -> std::uint16_t {
        if (n > 0xFFFF) {
            throw Error{ErrorCode::MalformedClassfile, "table too large"};
        }
        return static_cast<std::uint16_t>(n);
    }

    auto Patch(std::string body, std::vector<PoolRef> const& refs)
        -> std::string {
        for (auto const& ref : refs) {
            auto index = pool_.Intern(ref.value);
            if (ref.offset + ref.width > body.size()) {
                throw Error{ErrorCode::MalformedClassfile,
                            "pool reference outside attribute body"};
            }
            if (ref.width == 1) {
                if (index > 0xFF) {
                    throw Error{ErrorCode::PoolOverflow,
                                "ldc operand does not fit one byte"};
                }
                body[ref.offset] = static_cast<char>(index);
            }
            else {
                PatchU16be(&body, ref.offset, index);
            }
        }
        return body;
    }

    void WriteAttribute(std::string* out, std::string const& name,
                        std::string const& payload) {
        PutU16be(out, pool_.Utf8Index(name));
        PutU32be(out, static_cast<std::uint32_t>(payload.size()));
        *out += payload;
    }

    auto EncodeCode(CodeBody const& code) -> std::string {
        std::string out;
        PutU16be(&out, code.max_stack);
        PutU16be(&out, code.max_locals);
        PutU32be(&out, static_cast<std::uint32_t>(code.code.size()));
        out += Patch(code.code, code.code_refs);
        PutU16be(&out, Count16(code.handlers.size()));
        for (auto const& h : code.handlers) {
            PutU16be(&out, h.start_pc);
            PutU16be(&out, h.end_pc);
            PutU16be(&out, h.handler_pc);
            PutU16be(&out, h.catch_type ? pool_.Intern(*h.catch_type)
                                        : std::uint16_t{0});
        }
        WriteAttributes(&out, code.attributes, nullptr);
        return out;
    }

    void WriteAttributes(std::string* out,
                         std::vector<AttributeInfo> const& attrs,
                         CodeBody const* code) {
        PutU16be(out, Count16(attrs.size()));
        for (auto const& a : attrs) {
            if (a.name == "Code") {
                if (code == nullptr) {
                    throw Error{ErrorCode::MalformedClassfile,
                                "Code placeholder without a code body"};
                }
                WriteAttribute(out, a.name, EncodeCode(*code));
                continue;
            }
            WriteAttribute(out, a.name, Patch(a.body, a.refs));
        }
    }

    void WriteMembers(std::string* out, std::vector<MemberInfo> const& members) {
        PutU16be(out, Count16(members.size()));
        for (auto const& m : members) {
            PutU16be(out, m.access_flags);
            PutU16be(out, pool_.Utf8Index(m.name));
            PutU16be(out, pool_.Utf8Index(m.descriptor));
            WriteAttributes(out, m.attributes,
                            m.code ? &*m.code : nullptr);
        }
    }
};

// ---------------------------------------------------------------------------
// Canonicalization helpers

/// A byte range of an attribute body together with the pool references it
/// contains (offsets relative to the range).
struct Blob {
    std::string bytes;
    std::vector<PoolRef> refs;

    void Append(Blob const& other) {
        auto const base = static_cast<std::uint32_t>(bytes.size());
        bytes += other.bytes;
        for (auto ref : other.refs) {
            ref.offset += base;
            refs.push_back(std::move(ref));
        }
    }

    /// Pool-independent serialization used as a sort key.
    [[nodiscard]] auto SortKey() const -> std::string {
        std::string out = bytes;
        for (auto const& ref : refs) {
            PutU32be(&out, ref.offset);
            AppendKey(&out, ref.value);
        }
        return out;
    }
};

class BlobReader {
  public:
    explicit BlobReader(AttributeInfo const& attr)
        : body_{attr.body}, refs_{attr.refs} {}

    auto Take(std::size_t n) -> Blob {
        if (pos_ + n > body_.size()) {
            throw Error{ErrorCode::MalformedClassfile, "truncated attribute"};
        }
        Blob b;
        b.bytes = body_.substr(pos_, n);
        for (auto const& ref : refs_) {
            if (ref.offset >= pos_ and ref.offset < pos_ + n) {
                auto copy = ref;
                copy.offset -= static_cast<std::uint32_t>(pos_);
                b.refs.push_back(std::move(copy));
            }
        }
        pos_ += n;
        return b;
    }

    [[nodiscard]] auto PeekU8() const -> std::uint8_t {
        if (pos_ >= body_.size()) {
            throw Error{ErrorCode::MalformedClassfile, "truncated attribute"};
        }
        return static_cast<std::uint8_t>(body_[pos_]);
    }

    [[nodiscard]] auto PeekU16(std::size_t ahead = 0) const -> std::uint16_t {
        if (pos_ + ahead + 2 > body_.size()) {
            throw Error{ErrorCode::MalformedClassfile, "truncated attribute"};
        }
        return static_cast<std::uint16_t>(
            (static_cast<std::uint8_t>(body_[pos_ + ahead]) << 8) |
            static_cast<std::uint8_t>(body_[pos_ + ahead + 1]));
    }

    [[nodiscard]] auto AtEnd() const -> bool { return pos_ == body_.size(); }

  private:
    std::string const& body_;
    std::vector<PoolRef> const& refs_;
    std::size_t pos_{0};
};

auto SortedAnnotation(BlobReader* r) -> Blob;

auto SortedElementValue(BlobReader* r) -> Blob {
    auto tag = static_cast<char>(r->PeekU8());
    switch (tag) {
        case 'e':
            return r->Take(5);
        case '@': {
            auto out = r->Take(1);
            out.Append(SortedAnnotation(r));
            return out;
        }
        case '[': {
            auto out = r->Take(1);
            auto n = r->PeekU16();
            out.Append(r->Take(2));
            std::vector<Blob> values;
            for (std::uint32_t i = 0; i < n; ++i) {
                values.push_back(SortedElementValue(r));
            }
            std::stable_sort(values.begin(), values.end(),
                             [](Blob const& a, Blob const& b) {
                                 return a.SortKey() < b.SortKey();
                             });
            for (auto const& v : values) {
                out.Append(v);
            }
            return out;
        }
        default:
            return r->Take(3);
    }
}

auto SortedAnnotation(BlobReader* r) -> Blob {
    auto out = r->Take(2);
    auto pairs = r->PeekU16();
    out.Append(r->Take(2));
    for (std::uint32_t i = 0; i < pairs; ++i) {
        out.Append(r->Take(2));
        out.Append(SortedElementValue(r));
    }
    return out;
}

auto TypeAnnotationTargetSize(BlobReader* r) -> std::size_t {
    auto target = r->PeekU8();
    switch (target) {
        case 0x00:
        case 0x01:
        case 0x16:
            return 2;
        case 0x13:
        case 0x14:
        case 0x15:
            return 1;
        case 0x40:
        case 0x41:
            return 3 + static_cast<std::size_t>(r->PeekU16(1)) * 6;
        case 0x47:
        case 0x48:
        case 0x49:
        case 0x4A:
        case 0x4B:
            return 4;
        default:
            return 3;
    }
}

void SortAnnotationArrays(AttributeInfo* attr) {
    auto const& name = attr->name;
    BlobReader r{*attr};
    Blob out;
    if (name == "RuntimeVisibleAnnotations" or
        name == "RuntimeInvisibleAnnotations") {
        auto n = r.PeekU16();
        out.Append(r.Take(2));
        for (std::uint32_t i = 0; i < n; ++i) {
            out.Append(SortedAnnotation(&r));
        }
    }
    else if (name == "RuntimeVisibleParameterAnnotations" or
             name == "RuntimeInvisibleParameterAnnotations") {
        auto params = r.PeekU8();
        out.Append(r.Take(1));
        for (std::uint32_t p = 0; p < params; ++p) {
            auto n = r.PeekU16();
            out.Append(r.Take(2));
            for (std::uint32_t i = 0; i < n; ++i) {
                out.Append(SortedAnnotation(&r));
            }
        }
    }
    else if (name == "RuntimeVisibleTypeAnnotations" or
             name == "RuntimeInvisibleTypeAnnotations") {
        auto n = r.PeekU16();
        out.Append(r.Take(2));
        for (std::uint32_t i = 0; i < n; ++i) {
            out.Append(r.Take(TypeAnnotationTargetSize(&r)));
            auto path = r.PeekU8();
            out.Append(r.Take(1 + static_cast<std::size_t>(path) * 2));
            out.Append(SortedAnnotation(&r));
        }
    }
    else if (name == "AnnotationDefault") {
        out.Append(SortedElementValue(&r));
    }
    else {
        return;
    }
    attr->body = std::move(out.bytes);
    attr->refs = std::move(out.refs);
}

void SortInnerClasses(AttributeInfo* attr) {
    BlobReader r{*attr};
    auto n = r.PeekU16();
    auto head = r.Take(2);
    std::vector<std::pair<std::string, Blob>> records;
    for (std::uint32_t i = 0; i < n; ++i) {
        auto rec = r.Take(8);
        std::string name;
        for (auto const& ref : rec.refs) {
            if (ref.offset == 0 and not ref.value.refs.empty()) {
                name = ref.value.refs.front().bytes;
            }
        }
        auto key = name + '\0' + rec.SortKey();
        records.emplace_back(std::move(key), std::move(rec));
    }
    std::stable_sort(records.begin(), records.end(),
                     [](auto const& a, auto const& b) { return a.first < b.first; });
    for (auto const& [key, rec] : records) {
        head.Append(rec);
    }
    attr->body = std::move(head.bytes);
    attr->refs = std::move(head.refs);
}

auto IsDebugAttribute(std::string const& name) -> bool {
    return name == "SourceFile" or name == "SourceDebugExtension" or
           name == "LineNumberTable" or name == "LocalVariableTable" or
           name == "LocalVariableTypeTable";
}

void ForEachAttributeList(ClassFile* cf,
                          std::function<void(std::vector<AttributeInfo>*)> const& fn) {
    fn(&cf->attributes);
    for (auto* members : {&cf->fields, &cf->methods}) {
        for (auto& m : *members) {
            fn(&m.attributes);
            if (m.code) {
                fn(&m.code->attributes);
            }
        }
    }
}

auto Hex(std::string_view bytes) -> std::string {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (auto c : bytes) {
        auto u = static_cast<std::uint8_t>(c);
        out.push_back(kDigits[u >> 4]);
        out.push_back(kDigits[u & 0xF]);
    }
    return out;
}

auto RenderAttribute(AttributeInfo const& a, std::string const& indent)
    -> std::string {
    std::string out = indent + "attribute " + a.name;
    if (a.name == "LineNumberTable" and a.body.size() >= 2) {
        ByteReader r{a.body, ErrorCode::MalformedClassfile};
        auto n = r.u16be();
        for (std::uint32_t i = 0; i < n and r.remaining() >= 4; ++i) {
            auto pc = r.u16be();
            auto line = r.u16be();
            out += " " + std::to_string(pc) + ":" + std::to_string(line);
        }
        return out + "\n";
    }
    for (auto const& ref : a.refs) {
        out += " " + Describe(ref.value);
    }
    if (not a.body.empty()) {
        Blob b{a.body, a.refs};
        out += a.body.size() <= 32
                   ? " bytes=" + Hex(a.body)
                   : " sha256=" + Sha256Hex(b.SortKey()).substr(0, 16);
    }
    return out + "\n";
}

}  // namespace

auto ParseClassfile(std::string_view bytes) -> ClassFile {
    return Parser{bytes}.Run();
}

auto WriteClassfile(ClassFile const& cf) -> std::string {
    return Writer{cf}.Run();
}

auto CanonicalizeClassfile(ClassFile cf, ClassfileOptions const& options)
    -> ClassFile {
    if (not cf.unrelocatable.empty()) {
        std::string names;
        for (auto const& n : cf.unrelocatable) {
            names += (names.empty() ? "" : ", ") + n;
        }
        throw Error{ErrorCode::UnrelocatableAttribute,
                    cf.this_class + ": " + names};
    }
    if (options.strip_debug) {
        ForEachAttributeList(&cf, [](std::vector<AttributeInfo>* attrs) {
            std::erase_if(*attrs, [](auto const& a) {
                return IsDebugAttribute(a.name);
            });
        });
    }
    if (options.sort_members) {
        auto by_name = [](MemberInfo const& a, MemberInfo const& b) {
            return std::tie(a.name, a.descriptor) <
                   std::tie(b.name, b.descriptor);
        };
        std::stable_sort(cf.fields.begin(), cf.fields.end(), by_name);
        std::stable_sort(cf.methods.begin(), cf.methods.end(), by_name);
    }
    if (options.sort_inner_classes) {
        for (auto& a : cf.attributes) {
            if (a.name == "InnerClasses") {
                SortInnerClasses(&a);
            }
        }
    }
    if (options.sort_annotation_arrays) {
        ForEachAttributeList(&cf, [](std::vector<AttributeInfo>* attrs) {
            for (auto& a : *attrs) {
                SortAnnotationArrays(&a);
            }
        });
    }
    return cf;
}

auto Describe(Constant const& c) -> std::string {
    auto child = [&c](std::size_t i) {
        return i < c.refs.size() ? Describe(c.refs[i]) : std::string{"?"};
    };
    switch (c.tag) {
        case ConstantTag::Utf8:
            return "\"" + c.bytes + "\"";
        case ConstantTag::Integer: {
            ByteReader r{c.bytes, ErrorCode::MalformedClassfile};
            return "int " + std::to_string(static_cast<std::int32_t>(r.u32be()));
        }
        case ConstantTag::Float:
            return "float 0x" + Hex(c.bytes);
        case ConstantTag::Long: {
            ByteReader r{c.bytes, ErrorCode::MalformedClassfile};
            auto hi = static_cast<std::uint64_t>(r.u32be());
            auto lo = static_cast<std::uint64_t>(r.u32be());
            return "long " + std::to_string(static_cast<std::int64_t>((hi << 32) | lo));
        }
        case ConstantTag::Double:
            return "double 0x" + Hex(c.bytes);
        case ConstantTag::Class:
            return "Class " + c.refs.at(0).bytes;
        case ConstantTag::String:
            return "String " + child(0);
        case ConstantTag::Fieldref:
        case ConstantTag::Methodref:
        case ConstantTag::InterfaceMethodref: {
            auto const& nat = c.refs.at(1);
            auto kind = c.tag == ConstantTag::Fieldref      ? "Fieldref "
                        : c.tag == ConstantTag::Methodref ? "Methodref "
                                                          : "InterfaceMethodref ";
            return kind + c.refs.at(0).refs.at(0).bytes + "." +
                   nat.refs.at(0).bytes + ":" + nat.refs.at(1).bytes;
        }
        case ConstantTag::NameAndType:
            return "NameAndType " + c.refs.at(0).bytes + ":" + c.refs.at(1).bytes;
        case ConstantTag::MethodHandle:
            return "MethodHandle " + std::to_string(c.extra) + " " + child(0);
        case ConstantTag::MethodType:
            return "MethodType " + c.refs.at(0).bytes;
        case ConstantTag::Dynamic:
        case ConstantTag::InvokeDynamic:
            return std::string{c.tag == ConstantTag::Dynamic ? "Dynamic #"
                                                             : "InvokeDynamic #"} +
                   std::to_string(c.extra) + " " + child(0);
        case ConstantTag::Module:
            return "Module " + c.refs.at(0).bytes;
        case ConstantTag::Package:
            return "Package " + c.refs.at(0).bytes;
    }
    return "?";
}

auto RenderClassfile(ClassFile const& cf) -> std::string {
    auto flags = [](std::uint16_t f) {
        std::string s = "0x";
        s += Hex(std::string{static_cast<char>(f >> 8), static_cast<char>(f & 0xFF)});
        return s;
    };
    std::string out;
    out += "class " + cf.this_class + " version " +
           std::to_string(cf.major_version) + "." +
           std::to_string(cf.minor_version) + " flags " +
           flags(cf.access_flags) + "\n";
    if (cf.super_class) {
        out += "extends " + *cf.super_class + "\n";
    }
    for (auto const& i : cf.interfaces) {
        out += "implements " + i + "\n";
    }
    auto member = [&](char const* kind, MemberInfo const& m) {
        out += std::string{kind} + " " + m.name + " " + m.descriptor +
               " flags " + flags(m.access_flags) + "\n";
        for (auto const& a : m.attributes) {
            if (a.name != "Code" or not m.code) {
                out += RenderAttribute(a, "  ");
                continue;
            }
            auto const& code = *m.code;
            Blob b{code.code, code.code_refs};
            out += "  code stack=" + std::to_string(code.max_stack) +
                   " locals=" + std::to_string(code.max_locals) +
                   " length=" + std::to_string(code.code.size()) +
                   " sha256=" + Sha256Hex(b.SortKey()).substr(0, 16) + "\n";
            for (auto const& ref : code.code_refs) {
                out += "    @" + std::to_string(ref.offset) + " " +
                       Describe(ref.value) + "\n";
            }
            for (auto const& h : code.handlers) {
                out += "    handler " + std::to_string(h.start_pc) + "-" +
                       std::to_string(h.end_pc) + " -> " +
                       std::to_string(h.handler_pc) + " " +
                       (h.catch_type ? Describe(*h.catch_type) : "any") + "\n";
            }
            for (auto const& ca : code.attributes) {
                out += RenderAttribute(ca, "    ");
            }
        }
    };
    for (auto const& f : cf.fields) {
        member("field", f);
    }
    for (auto const& m : cf.methods) {
        member("method", m);
    }
    for (auto const& a : cf.attributes) {
        out += RenderAttribute(a, "");
    }
    return out;
}

}  // namespace canon
