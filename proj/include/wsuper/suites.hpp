#pragma once

// Corpus-level orchestration of the verification suites, with deterministic
// parallel fan-out over independent check units.

#include <thread>

#include "wsuper/appendix.hpp"
#include "wsuper/center.hpp"
#include "wsuper/corpus.hpp"
#include "wsuper/induction.hpp"
#include "wsuper/modules.hpp"

namespace wsuper {

// Deterministic parallel map: results land in input order regardless of the
// number of workers.
template <class F>
std::vector<Report> parallel_reports(int n, int jobs, F&& fn) {
    std::vector<Report> out(n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            for (int i = w; i < n; i += jobs) out[i] = fn(i);
        });
    for (auto& t : workers) t.join();
    return out;
}

inline Report merge_reports(std::vector<Report> parts) {
    Report out;
    for (auto& p : parts) out.append(p);
    return out;
}

inline std::string pyramid_tag(const Pyramid& pi) { return pi.str(); }

// prefix every record's check id with the pyramid it belongs to
inline Report tagged(const Pyramid& pi, Report rep) {
    for (auto& r : rep.records) r.check = pyramid_tag(pi) + " " + r.check;
    return rep;
}

inline std::vector<Pyramid> small_corpus(int max_boxes = 6, int max_height = 3) {
    std::vector<Pyramid> out;
    for (const auto& e : corpus(max_boxes, max_height, false)) out.push_back(e.pi);
    return out;
}

// ---------------------------------------------------------------------------

inline Report suite_relations(const std::vector<Pyramid>& pis, int jobs, int order = -1) {
    auto parts = parallel_reports(pis.size(), jobs, [&](int i) {
        WGen w(pis[i]);
        return tagged(pis[i], verify_relations(w, order > 0 ? order : w.default_order()));
    });
    return merge_reports(std::move(parts));
}

inline Report suite_invariance(const std::vector<Pyramid>& pis, int jobs) {
    auto parts = parallel_reports(pis.size(), jobs, [&](int i) {
        WGen w(pis[i]);
        return tagged(pis[i], verify_invariance(w));
    });
    return merge_reports(std::move(parts));
}

inline Report suite_vanishing(const std::vector<Pyramid>& pis, int jobs, int r_max = -1) {
    auto parts = parallel_reports(pis.size(), jobs, [&](int i) {
        WGen w(pis[i]);
        const int order = std::max(w.default_order(), r_max);
        GaussData g = make_gauss(w, order);
        return tagged(pis[i], verify_vanishing(g, r_max > 0 ? r_max : w.default_order()));
    });
    return merge_reports(std::move(parts));
}

inline Report suite_structural(const std::vector<Pyramid>& pis, int jobs, int order = -1) {
    // left-justify and deduplicate
    std::vector<Pyramid> lj;
    for (const Pyramid& pi : pis) {
        Pyramid p = justify(pi, true);
        bool seen = false;
        for (const Pyramid& q : lj)
            if (q == p) { seen = true; break; }
        if (!seen) lj.push_back(p);
    }
    auto parts = parallel_reports(lj.size(), jobs, [&](int i) {
        WGen w(lj[i]);
        GaussData g = make_gauss(w, order > 0 ? order : w.default_order());
        return tagged(lj[i], verify_structural_relations(g));
    });
    return merge_reports(std::move(parts));
}

inline Report suite_appendix(int jobs, int order = 5) {
    std::vector<Pyramid> pis = {
        pyramid_from_heights({3, 1}, ParitySeq::parse("+-+")),
        pyramid_from_heights({3, 1}, ParitySeq::parse("--+")),
        pyramid_from_heights({2, 2}, ParitySeq::parse("-+-")),
        pyramid_from_heights({2, 2, 1}, ParitySeq::parse("+-")),
        pyramid_from_heights({2, 2, 1}, ParitySeq::parse("-+-")),
    };
    auto parts = parallel_reports(pis.size(), jobs, [&](int i) {
        WGen w(pis[i]);
        Report rep;
        BlockGaussData b = make_block_gauss(w, order);
        rep.append(verify_block_root_recursions(b));
        rep.append(verify_column_removal(w, order));
        return tagged(pis[i], rep);
    });
    return merge_reports(std::move(parts));
}

inline Report suite_diagrams(const Pyramid& pi, int lp, int order, int jobs) {
    WGen w(pi);
    std::vector<std::function<Report()>> tasks;
    const int l = pi.level();
    for (int l1 = 0; l1 <= l; ++l1)
        for (int l2 = 0; l1 + l2 <= l; ++l2)
            tasks.push_back([&, l1, l2] { return verify_coassociativity(w, l1, l2, l - l1 - l2); });
    tasks.push_back([&] { return verify_coproduct_t(w, lp, std::min(order, 3)); });
    tasks.push_back([&] { return verify_delta_membership(w, lp, order); });
    tasks.push_back([&] { return verify_miura_factorization(w, lp); });
    tasks.push_back([&] { return verify_coberezinian(w, lp, std::min(order, 3)); });
    tasks.push_back([&] { return verify_pbw_and_miura_rank(w, 3); });
    // column removals: drop the first column and drop the last column
    if (l >= 2) {
        std::vector<int> keep_last, keep_first;
        for (int c = 2; c <= l; ++c) keep_last.push_back(c);
        for (int c = 1; c < l; ++c) keep_first.push_back(c);
        // only unimodal selections form pyramids; both of these do
        tasks.push_back([&, keep_last] {
            return verify_column_diagrams(w, keep_last, lp, order);
        });
        tasks.push_back([&, keep_first] {
            return verify_column_diagrams(w, keep_first, lp, order);
        });
    }
    // the WGen straightening cache is mutex-guarded; tasks share it
    auto parts = parallel_reports(tasks.size(), jobs, [&](int i) { return tasks[i](); });
    return tagged(pi, merge_reports(std::move(parts)));
}

inline Report suite_center(const std::vector<Pyramid>& pis, int jobs, int order = 3) {
    auto parts = parallel_reports(pis.size(), jobs, [&](int i) {
        WGen w(pis[i]);
        return tagged(pis[i], verify_center_theorem(w, order));
    });
    return merge_reports(std::move(parts));
}

// ---------------------------------------------------------------------------
// Character suite: oracle versus formula on seeded tableaux.

// a_{i,j} = b_i + j / P_i with distinct primes P_i > 2 depth + 2.
inline RowTab generic_tableau(const Pyramid& pi, unsigned seed, int depth) {
    static const int primes[] = {11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
    unsigned state = seed * 2654435761u + 97;
    auto next = [&] {
        state = state * 1664525u + 1013904223u;
        return static_cast<int>((state >> 16) % 7) - 3;
    };
    std::vector<std::vector<Rat>> rows(pi.height_bound() + 1);
    int pidx = 0;
    while (primes[pidx] <= 2 * depth + 2) ++pidx;
    for (int i = 1; i <= pi.height_bound(); ++i) {
        const int P = primes[pidx + (i - 1) % (10 - pidx)];
        const int b = next();
        for (int j = 1; j <= pi.p_row(i); ++j) rows[i].push_back(Rat(b) + rat(j, P));
    }
    return RowTab(pi, rows);
}

inline RowTab integral_tableau(const Pyramid& pi, unsigned seed) {
    unsigned state = seed * 748201573u + 11;
    auto next = [&] {
        state = state * 1664525u + 1013904223u;
        return static_cast<int>((state >> 20) % 3) - 1;  // repeats are likely
    };
    std::vector<std::vector<Rat>> rows(pi.height_bound() + 1);
    for (int i = 1; i <= pi.height_bound(); ++i)
        for (int j = 1; j <= pi.p_row(i); ++j) rows[i].push_back(Rat(next()));
    return RowTab(pi, rows);
}

inline Report suite_character(const std::vector<Pyramid>& pis, int depth, unsigned seed,
                              int per_pyramid, int jobs) {
    struct Task {
        Pyramid pi;
        RowTab tab;
        bool generic;
        int index;
    };
    std::vector<Task> tasks;
    for (const Pyramid& pi : pis) {
        for (int t = 0; t < per_pyramid; ++t) {
            tasks.push_back({pi, generic_tableau(pi, seed + 7 * t, depth), true, t});
            tasks.push_back({pi, integral_tableau(pi, seed + 13 * t), false, t});
        }
    }
    auto parts = parallel_reports(tasks.size(), jobs, [&](int i) {
        const Task& tk = tasks[i];
        Report rep;
        WModule m(tk.tab, depth);
        GtResult oracle = gt_character(m, depth);
        bool ok = oracle.ok;
        if (ok) {
            Character formula = ch_formula(tk.tab, depth);
            ok = oracle.character == formula;
        }
        rep.add("character", pyramid_tag(tk.pi) + (tk.generic ? " generic" : " integral"),
                {tk.index, depth}, ok, ok ? "" : oracle.error);
        return rep;
    });
    return merge_reports(std::move(parts));
}

// ---------------------------------------------------------------------------
// Finite-dimensionality criterion sweep on standard pyramids.

inline Report suite_findim(const std::vector<Pyramid>& pis, int window, int jobs) {
    std::vector<Pyramid> std_pis;
    for (const Pyramid& pi : pis)
        if (pi.parity.standard()) std_pis.push_back(pi);
    auto parts = parallel_reports(std_pis.size(), jobs, [&](int t) {
        const Pyramid& pi = std_pis[t];
        Report rep;
        const int boxes = pi.boxes();
        std::vector<int> v(boxes, 0);
        long agree = 0, total = 0;
        while (true) {
            PiTableau tb(pi);
            for (int b = 1; b <= boxes; ++b) tb.at_box(b) = Rat(v[b - 1]);
            CriterionComparison cmp = colstrict_vs_criterion(RowTab(tb));
            if (cmp.agree()) ++agree;
            ++total;
            int c = 0;
            while (c < boxes && ++v[c] >= window) { v[c] = 0; ++c; }
            if (c == boxes) break;
        }
        rep.add("findim", pyramid_tag(pi) + " criterion-equivalence",
                {static_cast<int>(total)}, agree == total,
                agree == total ? "" : std::to_string(total - agree) + " disagreements");
        return rep;
    });
    return merge_reports(std::move(parts));
}

}  // namespace wsuper
