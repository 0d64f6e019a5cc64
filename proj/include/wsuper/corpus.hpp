#pragma once

// Deterministic enumeration of the standard test corpus: all pyramids with at
// most `max_boxes` boxes and height at most `max_height`, over all parity
// sequences of the pyramid height (no empty rows), plus the six-column
// example pyramid used throughout the tests.

#include <vector>

#include "wsuper/combinat.hpp"

namespace wsuper {

struct CorpusEntry {
    Pyramid pi;
    bool small = true;  // false for the large display example
};

namespace detail {
inline void unimodal_shapes(int max_boxes, int max_height, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    // enumerate all unimodal tuples with entries in [1, max_height]
    std::function<void(int)> rec = [&](int sum) {
        if (!cur.empty()) out.push_back(cur);
        for (int next = 1; next <= max_height && sum + next <= max_boxes; ++next) {
            // keep unimodality: once we have started descending we may not ascend
            bool ok = true;
            bool descended = false;
            for (size_t i = 1; i < cur.size(); ++i) {
                if (cur[i] < cur[i - 1]) descended = true;
                else if (descended && cur[i] > cur[i - 1]) ok = false;
            }
            if (!cur.empty()) {
                bool desc_now = false;
                for (size_t i = 1; i < cur.size(); ++i)
                    if (cur[i] < cur[i - 1]) desc_now = true;
                if (desc_now && next > cur.back()) ok = false;
            }
            if (!ok) continue;
            cur.push_back(next);
            rec(sum + next);
            cur.pop_back();
        }
    };
    rec(0);
}
}  // namespace detail

inline std::vector<ParitySeq> all_parities(int h) {
    std::vector<ParitySeq> out;
    for (int mask = 0; mask < (1 << h); ++mask) {
        std::vector<int> e(h);
        for (int i = 0; i < h; ++i) e[i] = (mask >> i) & 1 ? -1 : 1;
        out.emplace_back(std::move(e));
    }
    return out;
}

inline Pyramid example_pyramid() {
    return pyramid_from_heights({1, 4, 4, 3, 2, 1}, ParitySeq::parse("-++-"));
}

// Representative parity sequences for the larger shapes: all sequences for
// up to four boxes, and the alternating plus constant ones beyond (both signs
// always appear).
inline std::vector<ParitySeq> representative_parities(int h, int boxes) {
    if (boxes <= 4) return all_parities(h);
    std::vector<ParitySeq> out;
    auto add = [&](std::vector<int> e) {
        ParitySeq s(std::move(e));
        for (const ParitySeq& t : out)
            if (t == s) return;
        out.push_back(std::move(s));
    };
    std::vector<int> plus(h, 1), minus(h, -1), alt(h), alt2(h);
    for (int i = 0; i < h; ++i) {
        alt[i] = i % 2 ? -1 : 1;
        alt2[i] = i % 2 ? 1 : -1;
    }
    add(plus);
    add(minus);
    add(alt);
    add(alt2);
    return out;
}

inline std::vector<CorpusEntry> corpus(int max_boxes = 6, int max_height = 3,
                                       bool include_example = true) {
    std::vector<CorpusEntry> out;
    std::vector<std::vector<int>> shapes;
    detail::unimodal_shapes(max_boxes, max_height, shapes);
    for (const auto& q : shapes) {
        int boxes = 0;
        for (int x : q) boxes += x;
        int h = *std::max_element(q.begin(), q.end());
        for (const ParitySeq& s : representative_parities(h, boxes)) {
            Pyramid pi = pyramid_from_heights(q, s);
            out.push_back({pi, true});
        }
    }
    if (include_example) out.push_back({example_pyramid(), false});
    return out;
}

}  // namespace wsuper
