#pragma once

// Incremental exact Gaussian elimination over Q for sparse coordinate vectors.
// Used for PBW-membership tests, rank computations and change of generators.

#include <map>
#include <optional>

#include "wsuper/rational.hpp"

namespace wsuper {

using SparseVec = std::map<long, Rat>;  // coordinate -> value, zero-free

inline void axpy(SparseVec& y, const Rat& a, const SparseVec& x) {
    if (wsuper::is_zero(a)) return;
    for (auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            Rat nv = a * v;
            if (!wsuper::is_zero(nv)) y.emplace(k, nv);
        } else {
            it->second += a * v;
            if (wsuper::is_zero(it->second)) y.erase(it);
        }
    }
}

class ExactSolver {
  public:
    // Try to add vector v (the image of basis element `id`); returns true if
    // v was independent of the vectors added so far.
    bool add(SparseVec v, long id) {
        SparseVec combo{{id, Rat(1)}};
        reduce(v, combo);
        if (v.empty()) return false;
        const auto [piv, pval] = *v.begin();
        Rat inv = Rat(1) / pval;
        for (auto& [k, val] : v) val *= inv;
        for (auto& [k, val] : combo) val *= inv;
        rows_.push_back({std::move(v), std::move(combo)});
        pivot_row_[piv] = rows_.size() - 1;
        return true;
    }

    // Express `target` as a combination of the added vectors; nullopt if the
    // target is outside their span.  Returns id -> coefficient.
    std::optional<SparseVec> express(SparseVec target) const {
        SparseVec combo;
        reduce(target, combo);
        if (!target.empty()) return std::nullopt;
        for (auto& [k, v] : combo) v = -v;
        return combo;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    // Eliminate every coordinate of v that has a pivot row.  Elimination at a
    // pivot only introduces coordinates strictly above it, so one increasing
    // sweep suffices.
    void reduce(SparseVec& v, SparseVec& combo) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto rt = pivot_row_.find(it->first);
            if (rt == pivot_row_.end()) { ++it; continue; }
            const long piv = it->first;
            Rat c = -it->second;
            axpy(v, c, rows_[rt->second].vec);
            axpy(combo, c, rows_[rt->second].combo);
            it = v.upper_bound(piv);
        }
    }

    struct Row {
        SparseVec vec;
        SparseVec combo;
    };
    std::vector<Row> rows_;
    std::map<long, int> pivot_row_;
};

}  // namespace wsuper
