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

#include "canon/sbom.hpp"

#include <cctype>
#include <vector>

#include "canon/error.hpp"
#include "json.hpp"

namespace canon {
namespace {

using nlohmann::json;

void Scrub(json* node, SbomOptions const& options, bool in_metadata) {
    if (node->is_array()) {
        for (auto& child : *node) {
            Scrub(&child, options, false);
        }
        return;
    }
    if (not node->is_object()) {
        return;
    }
    if (options.serial_number) {
        node->erase("serialNumber");
    }
    if (options.timestamp and in_metadata) {
        node->erase("timestamp");
    }
    if (options.licenses) {
        node->erase("licenses");
    }
    if (options.description) {
        node->erase("description");
    }
    if (options.external_references) {
        node->erase("externalReferences");
    }
    for (auto& [key, child] : node->items()) {
        Scrub(&child, options, key == "metadata");
    }
}

auto CanonicalizeJson(std::string_view text, SbomOptions const& options)
    -> std::string {
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (json::exception const& e) {
        throw Error{ErrorCode::NotAnSbom, std::string{"invalid JSON: "} + e.what()};
    }
    if (not doc.is_object() or not doc.contains("bomFormat") or
        doc["bomFormat"] != "CycloneDX") {
        throw Error{ErrorCode::NotAnSbom, "bomFormat is not CycloneDX"};
    }
    Scrub(&doc, options, false);
    try {
        return doc.dump(2) + "\n";
    }
    catch (json::exception const& e) {
        throw Error{ErrorCode::NotAnSbom, e.what()};
    }
}

auto IsNameChar(char c) -> bool {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 or c == '_' or
           c == '-' or c == '.' or c == ':';
}

/// Local name of the tag whose '<' is at pos, with its namespace prefix.
auto TagNameAt(std::string_view text, std::size_t pos) -> std::string_view {
    auto end = pos + 1;
    while (end < text.size() and IsNameChar(text[end])) {
        ++end;
    }
    return text.substr(pos + 1, end - pos - 1);
}

auto LocalName(std::string_view qname) -> std::string_view {
    auto colon = qname.rfind(':');
    return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

/// Widens [begin, end) to whole lines when only blanks surround it.
void ExpandToLine(std::string const& s, std::size_t* begin, std::size_t* end) {
    auto b = *begin;
    while (b > 0 and (s[b - 1] == ' ' or s[b - 1] == '\t')) {
        --b;
    }
    auto e = *end;
    while (e < s.size() and (s[e] == ' ' or s[e] == '\t')) {
        ++e;
    }
    bool line_start = b == 0 or s[b - 1] == '\n';
    bool line_end = e == s.size() or s[e] == '\n' or s[e] == '\r';
    if (line_start and line_end) {
        if (e < s.size() and s[e] == '\r') {
            ++e;
        }
        if (e < s.size() and s[e] == '\n') {
            ++e;
        }
        *begin = b;
        *end = e;
    }
}

void RemoveElements(std::string* s, std::string_view local,
                    bool only_in_metadata) {
    std::size_t pos = 0;
    int metadata_depth = 0;
    while ((pos = s->find('<', pos)) != std::string::npos) {
        if (s->compare(pos, 4, "<!--") == 0) {
            auto close = s->find("-->", pos);
            pos = close == std::string::npos ? s->size() : close + 3;
            continue;
        }
        bool closing = pos + 1 < s->size() and (*s)[pos + 1] == '/';
        auto qname = TagNameAt(*s, closing ? pos + 1 : pos);
        if (LocalName(qname) == "metadata") {
            auto gt = s->find('>', pos);
            bool self_closing = gt != std::string::npos and (*s)[gt - 1] == '/';
            if (closing) {
                --metadata_depth;
            }
            else if (not self_closing) {
                ++metadata_depth;
            }
        }
        if (closing or LocalName(qname) != local or
            (only_in_metadata and metadata_depth == 0)) {
            ++pos;
            continue;
        }
        auto gt = s->find('>', pos);
        if (gt == std::string::npos) {
            throw Error{ErrorCode::NotAnSbom, "unterminated tag"};
        }
        std::size_t end = gt + 1;
        if ((*s)[gt - 1] != '/') {
            auto close_tag = "</" + std::string{qname} + ">";
            auto close = s->find(close_tag, gt);
            if (close == std::string::npos) {
                throw Error{ErrorCode::NotAnSbom,
                            "unclosed element " + std::string{qname}};
            }
            end = close + close_tag.size();
        }
        auto begin = pos;
        ExpandToLine(*s, &begin, &end);
        s->erase(begin, end - begin);
        pos = begin;
    }
}

void RemoveSerialAttribute(std::string* s) {
    auto bom = s->find("<bom");
    while (bom != std::string::npos and bom + 4 < s->size() and
           IsNameChar((*s)[bom + 4])) {
        bom = s->find("<bom", bom + 1);
    }
    if (bom == std::string::npos) {
        return;
    }
    auto gt = s->find('>', bom);
    auto attr = s->find("serialNumber", bom);
    if (attr == std::string::npos or attr > gt) {
        return;
    }
    auto eq = s->find('=', attr);
    if (eq == std::string::npos or eq > gt) {
        return;
    }
    auto q = s->find_first_of("\"'", eq);
    if (q == std::string::npos or q > gt) {
        return;
    }
    auto q2 = s->find((*s)[q], q + 1);
    if (q2 == std::string::npos) {
        throw Error{ErrorCode::NotAnSbom, "unterminated attribute"};
    }
    auto begin = attr;
    while (begin > bom and std::isspace(static_cast<unsigned char>((*s)[begin - 1]))) {
        --begin;
    }
    s->erase(begin, q2 + 1 - begin);
}

auto CanonicalizeXml(std::string_view text, SbomOptions const& options)
    -> std::string {
    if (text.find("cyclonedx.org/schema/bom") == std::string_view::npos) {
        throw Error{ErrorCode::NotAnSbom, "no CycloneDX namespace"};
    }
    std::string s{text};
    if (options.serial_number) {
        RemoveSerialAttribute(&s);
    }
    if (options.timestamp) {
        RemoveElements(&s, "timestamp", true);
    }
    if (options.licenses) {
        RemoveElements(&s, "licenses", false);
    }
    if (options.description) {
        RemoveElements(&s, "description", false);
    }
    if (options.external_references) {
        RemoveElements(&s, "externalReferences", false);
    }
    return s;
}

}  // namespace

auto CanonicalizeSbom(std::string_view text, SbomOptions const& options)
    -> std::string {
    auto first = text.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
    if (first == std::string_view::npos) {
        throw Error{ErrorCode::NotAnSbom, "empty document"};
    }
    if (text[first] == '<') {
        return CanonicalizeXml(text, options);
    }
    return CanonicalizeJson(text, options);
}

}  // namespace canon
