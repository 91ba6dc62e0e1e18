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

#include "canon/text_diff.hpp"

#include <algorithm>

#include "canon/text.hpp"

namespace canon {
namespace {

constexpr std::string_view kNoNewline = "\\ No newline at end of file\n";

enum class Op { Equal, Delete, Insert };

struct Edit {
    Op op;
    std::size_t a;  // index into a (Equal, Delete)
    std::size_t b;  // index into b (Equal, Insert)
};

using Lines = std::vector<std::string_view>;

/// Myers' greedy algorithm; returns the full edit script.
auto Myers(Lines const& a, Lines const& b) -> std::vector<Edit> {
    auto const n = static_cast<long>(a.size());
    auto const m = static_cast<long>(b.size());
    std::vector<std::vector<long>> trace;  // trace[d][k + d] = furthest x
    long final_d = 0;
    for (long d = 0; d <= n + m; ++d) {
        std::vector<long> v(static_cast<std::size_t>(2 * d + 1));
        auto const* prev = d > 0 ? &trace.back() : nullptr;
        auto at = [&](long k) { return (*prev)[static_cast<std::size_t>(k + d - 1)]; };
        bool done = false;
        for (long k = -d; k <= d; k += 2) {
            long x = 0;
            if (d == 0) {
                x = 0;
            }
            else if (k == -d or (k != d and at(k - 1) < at(k + 1))) {
                x = at(k + 1);
            }
            else {
                x = at(k - 1) + 1;
            }
            long y = x - k;
            while (x < n and y < m and
                   a[static_cast<std::size_t>(x)] == b[static_cast<std::size_t>(y)]) {
                ++x;
                ++y;
            }
            v[static_cast<std::size_t>(k + d)] = x;
            if (x >= n and y >= m) {
                done = true;
            }
        }
        trace.push_back(std::move(v));
        if (done) {
            final_d = d;
            break;
        }
    }

    std::vector<Edit> script;
    long x = n;
    long y = m;
    for (long d = final_d; d > 0; --d) {
        auto const& prev = trace[static_cast<std::size_t>(d - 1)];
        auto at = [&](long k) { return prev[static_cast<std::size_t>(k + d - 1)]; };
        long const k = x - y;
        bool const down = k == -d or (k != d and at(k - 1) < at(k + 1));
        long const prev_k = down ? k + 1 : k - 1;
        long const prev_x = at(prev_k);
        long const prev_y = prev_x - prev_k;
        long const mid_x = down ? prev_x : prev_x + 1;
        long const mid_y = down ? prev_y + 1 : prev_y;
        while (x > mid_x and y > mid_y) {
            --x;
            --y;
            script.push_back({Op::Equal, static_cast<std::size_t>(x),
                              static_cast<std::size_t>(y)});
        }
        if (down) {
            script.push_back({Op::Insert, static_cast<std::size_t>(prev_x),
                              static_cast<std::size_t>(prev_y)});
        }
        else {
            script.push_back({Op::Delete, static_cast<std::size_t>(prev_x),
                              static_cast<std::size_t>(prev_y)});
        }
        x = prev_x;
        y = prev_y;
    }
    while (x > 0 and y > 0) {
        --x;
        --y;
        script.push_back({Op::Equal, static_cast<std::size_t>(x),
                          static_cast<std::size_t>(y)});
    }
    std::reverse(script.begin(), script.end());
    return script;
}

void PushLine(std::vector<std::string>* out, char prefix,
              std::string_view line) {
    std::string s(1, prefix);
    s += line;
    bool const terminated = not line.empty() and line.back() == '\n';
    if (not terminated) {
        s.push_back('\n');
    }
    out->push_back(std::move(s));
    if (not terminated) {
        out->emplace_back(kNoNewline);
    }
}

auto Range(std::size_t start, std::size_t count) -> std::string {
    // GNU convention: an empty range names the line before it.
    auto first = count == 0 ? start : start + 1;
    if (count == 1) {
        return std::to_string(first);
    }
    return std::to_string(first) + "," + std::to_string(count);
}

}  // namespace

auto Hunk::Header() const -> std::string {
    return "@@ -" + Range(old_start, old_count) + " +" +
           Range(new_start, new_count) + " @@\n";
}

auto UnifiedTextDiff(std::string_view a, std::string_view b,
                     std::size_t context) -> std::vector<Hunk> {
    if (a == b) {
        return {};
    }
    auto const la = SplitLinesKeepEnds(a);
    auto const lb = SplitLinesKeepEnds(b);
    auto const script = Myers(la, lb);

    std::vector<Hunk> hunks;
    std::size_t i = 0;
    while (i < script.size()) {
        while (i < script.size() and script[i].op == Op::Equal) {
            ++i;
        }
        if (i == script.size()) {
            break;
        }
        // [first, last) covers the changes of this hunk plus context.
        auto first = i >= context ? i - context : 0;
        std::size_t last = i;
        while (last < script.size()) {
            if (script[last].op != Op::Equal) {
                ++last;
                continue;
            }
            auto run_end = last;
            while (run_end < script.size() and script[run_end].op == Op::Equal) {
                ++run_end;
            }
            if (run_end == script.size() or run_end - last > 2 * context) {
                last = std::min(last + context, run_end);
                break;
            }
            last = run_end;
        }
        Hunk h;
        // Every edit records its position in both files.
        auto const& start = script[first];
        h.old_start = start.a;
        h.new_start = start.b;
        for (auto j = first; j < last; ++j) {
            auto const& e = script[j];
            switch (e.op) {
                case Op::Equal:
                    PushLine(&h.lines, ' ', la[e.a]);
                    ++h.old_count;
                    ++h.new_count;
                    break;
                case Op::Delete:
                    PushLine(&h.lines, '-', la[e.a]);
                    ++h.old_count;
                    break;
                case Op::Insert:
                    PushLine(&h.lines, '+', lb[e.b]);
                    ++h.new_count;
                    break;
            }
        }
        hunks.push_back(std::move(h));
        i = last;
    }
    return hunks;
}

auto FormatHunks(std::vector<Hunk> const& hunks) -> std::string {
    std::string out;
    for (auto const& h : hunks) {
        out += h.Header();
        for (auto const& line : h.lines) {
            out += line;
        }
    }
    return out;
}

auto FormatUnifiedDiff(std::vector<Hunk> const& hunks, std::string_view from,
                       std::string_view to) -> std::string {
    if (hunks.empty()) {
        return {};
    }
    return "--- " + std::string{from} + "\n+++ " + std::string{to} + "\n" +
           FormatHunks(hunks);
}

}  // namespace canon
