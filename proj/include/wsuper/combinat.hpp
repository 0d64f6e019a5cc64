#pragma once

// Pyramids, shift matrices, parity sequences and pi-tableaux.
//
// Conventions used throughout the library:
//  * rows are numbered 1..m+n from top to bottom; row lengths p_1 <= ... <= p_{m+n}
//    and empty rows (p_i = 0) are allowed;
//  * columns are numbered 1..l from left to right, column c holds q_c boxes
//    resting on the bottom row (French style), so row i meets column c iff
//    i > m+n - q_c;
//  * boxes carry flat labels 1..M+N: even boxes get 1..M down columns from left
//    to right, odd boxes get M+1..M+N the same way;
//  * all public indices are 1-based.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsuper/rational.hpp"

namespace wsuper {

struct ParitySeq {
    std::vector<int> entries;  // +1 / -1, rows top to bottom

    ParitySeq() = default;
    explicit ParitySeq(std::vector<int> e) : entries(std::move(e)) {
        for (int v : entries)
            if (v != 1 && v != -1) throw std::invalid_argument("parity entries must be +-1");
    }
    // "+-+" style string.
    static ParitySeq parse(const std::string& text) {
        std::vector<int> e;
        for (char c : text) {
            if (c == '+') e.push_back(1);
            else if (c == '-') e.push_back(-1);
            else if (c == ' ') continue;
            else throw std::invalid_argument(std::string("bad parity char '") + c + "'");
        }
        return ParitySeq(std::move(e));
    }

    int size() const { return static_cast<int>(entries.size()); }
    int at(int i) const { return entries.at(i - 1); }  // 1-based
    int m() const { return static_cast<int>(std::count(entries.begin(), entries.end(), 1)); }
    int n() const { return static_cast<int>(std::count(entries.begin(), entries.end(), -1)); }
    // Standard iff all +1 entries precede all -1 entries.
    bool standard() const {
        bool seen_minus = false;
        for (int v : entries) {
            if (v == -1) seen_minus = true;
            else if (seen_minus) return false;
        }
        return true;
    }
    std::string str() const {
        std::string s;
        for (int v : entries) s += (v == 1 ? '+' : '-');
        return s;
    }
    bool operator==(const ParitySeq& o) const { return entries == o.entries; }
};

struct ShiftMatrix {
    std::vector<std::vector<int>> s;  // (m+n) x (m+n), s[i-1][j-1]

    ShiftMatrix() = default;
    explicit ShiftMatrix(int size) : s(size, std::vector<int>(size, 0)) {}

    int size() const { return static_cast<int>(s.size()); }
    int at(int i, int j) const { return s.at(i - 1).at(j - 1); }
    int& at(int i, int j) { return s.at(i - 1).at(j - 1); }

    // s_{i,j} + s_{j,k} = s_{i,k} whenever |i-j| + |j-k| = |i-k|.
    bool satisfies_additivity() const {
        const int n = size();
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    if (std::abs(i - j) + std::abs(j - k) == std::abs(i - k) &&
                        at(i, j) + at(j, k) != at(i, k))
                        return false;
        return true;
    }

    // Rebuild from the super/sub-diagonal entries.
    static ShiftMatrix from_diagonals(const std::vector<int>& upper, const std::vector<int>& lower) {
        if (upper.size() != lower.size())
            throw std::invalid_argument("diagonal length mismatch");
        const int n = static_cast<int>(upper.size()) + 1;
        ShiftMatrix sm(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i < j)
                    for (int t = i; t < j; ++t) sm.at(i, j) += upper[t - 1];
                else if (i > j)
                    for (int t = j; t < i; ++t) sm.at(i, j) += lower[t - 1];
            }
        return sm;
    }

    bool operator==(const ShiftMatrix& o) const { return s == o.s; }
};

struct Pyramid {
    std::vector<int> q;  // column heights q_1..q_l, unimodal per eq:k-def
    ParitySeq parity;    // length m+n; row parities, empty rows included
    int k = 1;           // chosen split column, q_k maximal

    // Derived data (filled by finalize()).
    std::vector<int> p;                       // row lengths, index 0 unused
    std::vector<int> row_of, col_of, pa_of;   // per flat box label, index 0 unused
    std::vector<std::vector<int>> box_table;  // box_table[i][c] = flat label or 0
    std::vector<int> mcol, ncol, qcheck;      // per column: even/odd counts, super height
    std::vector<Rat> kappa;                   // per row (eq:ka)
    std::vector<int> rho;                     // per column (rhodef)
    int M = 0, N = 0, hbar = 0;

    int level() const { return static_cast<int>(q.size()); }
    int height_bound() const { return parity.size(); }  // m+n
    int boxes() const { return M + N; }
    int row(int b) const { return row_of.at(b); }
    int col(int b) const { return col_of.at(b); }
    int pa(int b) const { return pa_of.at(b); }          // 0 even, 1 odd
    int sign_of_box(int b) const { return pa_of.at(b) == 0 ? 1 : -1; }
    int box_at(int r, int c) const { return box_table.at(r).at(c); }
    bool row_meets_col(int r, int c) const { return r > height_bound() - q.at(c - 1); }
    int p_row(int i) const { return p.at(i); }

    // Boxes down columns, left to right; defines the parity sequence s(pi).
    std::vector<int> reading_order() const {
        std::vector<int> out;
        for (int c = 1; c <= level(); ++c)
            for (int r = 1; r <= height_bound(); ++r)
                if (int b = box_at(r, c)) out.push_back(b);
        return out;
    }
    ParitySeq box_parity_seq() const {
        std::vector<int> e;
        for (int b : reading_order()) e.push_back(sign_of_box(b));
        return ParitySeq(std::move(e));
    }

    bool operator==(const Pyramid& o) const {
        return q == o.q && parity == o.parity && k == o.k;
    }

    void finalize();
    std::string str() const {
        std::string s = "q=(";
        for (size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
        return s + ") s=" + parity.str() + " k=" + std::to_string(k);
    }
};

inline void Pyramid::finalize() {
    const int mn = height_bound();
    const int l = level();
    if (l == 0) {
        k = 0;
        p.assign(mn + 1, 0);
        row_of = col_of = pa_of = {0};
        box_table.assign(mn + 1, std::vector<int>(1, 0));
        mcol.clear(); ncol.clear(); qcheck.clear(); rho.clear();
        M = N = hbar = 0;
        kappa.assign(mn + 1, Rat(0));
        // kappa still defined by the parity sequence alone
        for (int i = 1; i <= mn; ++i)
            kappa[i] = (i == 1) ? Rat(parity.at(1) == 1 ? 0 : -1)
                                : Rat(kappa[i - 1] + rat(parity.at(i) + parity.at(i - 1), 2));
        return;
    }
    for (int c = 0; c < l; ++c) {
        if (q[c] <= 0) throw std::invalid_argument("column heights must be positive");
        if (q[c] > mn) throw std::invalid_argument("column height exceeds m+n");
    }
    if (k < 1 || k > l) throw std::invalid_argument("k out of range");
    for (int c = 1; c < k; ++c)
        if (q[c - 1] > q[c]) throw std::invalid_argument("heights not unimodal (left of k)");
    for (int c = k + 1; c < l; ++c)
        if (q[c - 1] < q[c]) throw std::invalid_argument("heights not unimodal (right of k)");
    if (q[k - 1] != *std::max_element(q.begin(), q.end()))
        throw std::invalid_argument("k does not attain the maximal height");

    p.assign(mn + 1, 0);
    for (int i = 1; i <= mn; ++i)
        for (int c = 1; c <= l; ++c)
            if (row_meets_col(i, c)) ++p[i];

    M = N = 0;
    for (int i = 1; i <= mn; ++i) (parity.at(i) == 1 ? M : N) += p[i];

    box_table.assign(mn + 1, std::vector<int>(l + 1, 0));
    row_of.assign(M + N + 1, 0);
    col_of.assign(M + N + 1, 0);
    pa_of.assign(M + N + 1, 0);
    int next_even = 1, next_odd = M + 1;
    for (int c = 1; c <= l; ++c)
        for (int i = 1; i <= mn; ++i) {
            if (!row_meets_col(i, c)) continue;
            if (parity.at(i) == 1) {
                box_table[i][c] = next_even;
                row_of[next_even] = i; col_of[next_even] = c; pa_of[next_even] = 0;
                ++next_even;
            }
        }
    for (int c = 1; c <= l; ++c)
        for (int i = 1; i <= mn; ++i) {
            if (!row_meets_col(i, c)) continue;
            if (parity.at(i) == -1) {
                box_table[i][c] = next_odd;
                row_of[next_odd] = i; col_of[next_odd] = c; pa_of[next_odd] = 1;
                ++next_odd;
            }
        }

    mcol.assign(l + 1, 0);
    ncol.assign(l + 1, 0);
    qcheck.assign(l + 1, 0);
    for (int c = 1; c <= l; ++c) {
        for (int i = 1; i <= mn; ++i)
            if (row_meets_col(i, c)) (parity.at(i) == 1 ? mcol[c] : ncol[c])++;
        qcheck[c] = mcol[c] - ncol[c];
    }
    hbar = M - N;  // the super box count; rho_1 = 0 for every pyramid

    kappa.assign(mn + 1, Rat(0));
    for (int i = 1; i <= mn; ++i)
        kappa[i] = (i == 1) ? Rat(parity.at(1) == 1 ? 0 : -1)
                            : Rat(kappa[i - 1] + rat(parity.at(i) + parity.at(i - 1), 2));

    rho.assign(l + 1, 0);
    for (int r = 1; r <= l; ++r) {
        rho[r] = hbar;
        for (int j = r; j <= l; ++j) rho[r] -= qcheck[j];
    }
}

inline Pyramid pyramid_from_heights(std::vector<int> q, ParitySeq parity,
                                    std::optional<int> k = std::nullopt) {
    if (q.empty()) throw std::invalid_argument("pyramid needs at least one column");
    Pyramid pi;
    pi.q = std::move(q);
    pi.parity = std::move(parity);
    if (k) {
        pi.k = *k;
    } else {
        pi.k = 1;
        for (size_t c = 1; c < pi.q.size(); ++c)
            if (pi.q[c] > pi.q[pi.k - 1]) pi.k = static_cast<int>(c) + 1;
    }
    pi.finalize();
    return pi;
}

// eq:sigma-def.
inline ShiftMatrix shift_matrix_of(const Pyramid& pi) {
    const int mn = pi.height_bound();
    ShiftMatrix sm(mn);
    for (int i = 1; i <= mn; ++i)
        for (int j = 1; j <= mn; ++j) {
            if (i >= j) {
                for (int c = 1; c <= pi.k; ++c)
                    if (i > mn - pi.q[c - 1] && mn - pi.q[c - 1] >= j) ++sm.at(i, j);
            }
            if (i <= j) {
                for (int c = pi.k + 1; c <= pi.level(); ++c)
                    if (i <= mn - pi.q[c - 1] && mn - pi.q[c - 1] < j) ++sm.at(i, j);
            }
        }
    return sm;
}

// Row i carries l - s_{m+n,i} - s_{i,m+n} boxes, indented s_{m+n,i} from the
// left and s_{i,m+n} from the right.
inline Pyramid pyramid_from_triple(const ShiftMatrix& sigma, int level, ParitySeq parity) {
    const int mn = sigma.size();
    if (parity.size() != mn) throw std::invalid_argument("parity length != shift matrix size");
    std::vector<int> q(level, 0);
    for (int i = 1; i <= mn; ++i) {
        const int left = sigma.at(mn, i), right = sigma.at(i, mn);
        const int len = level - left - right;
        if (len < 0) throw std::invalid_argument("level too small for shift matrix");
        for (int c = left + 1; c <= level - right; ++c) ++q[c - 1];
    }
    for (int c = 0; c < level; ++c)
        if (q[c] == 0) throw std::invalid_argument("shift matrix leaves an empty column");
    return pyramid_from_heights(std::move(q), std::move(parity));
}

// Leftmost lp columns and the rest; both keep the full parity sequence.
inline std::pair<Pyramid, Pyramid> split(const Pyramid& pi, int lp) {
    if (lp < 0 || lp > pi.level()) throw std::invalid_argument("split point out of range");
    Pyramid a, b;
    a.parity = b.parity = pi.parity;
    a.q.assign(pi.q.begin(), pi.q.begin() + lp);
    b.q.assign(pi.q.begin() + lp, pi.q.end());
    auto def_k = [](Pyramid& x) {
        x.k = 1;
        for (size_t c = 1; c < x.q.size(); ++c)
            if (x.q[c] > x.q[x.k - 1]) x.k = static_cast<int>(c) + 1;
        x.finalize();
    };
    if (!a.q.empty()) def_k(a); else a.finalize();
    if (!b.q.empty()) def_k(b); else b.finalize();
    return {a, b};
}

inline Pyramid justify(const Pyramid& pi, bool left) {
    Pyramid out;
    out.parity = pi.parity;
    out.q = pi.q;
    if (left)
        std::sort(out.q.begin(), out.q.end(), std::greater<int>());
    else
        std::sort(out.q.begin(), out.q.end());
    out.k = 1;
    for (size_t c = 1; c < out.q.size(); ++c)
        if (out.q[c] > out.q[out.k - 1]) out.k = static_cast<int>(c) + 1;
    out.finalize();
    return out;
}

// Concatenate columns (pi' on the left); parities must agree row by row from
// the bottom. Returns the joint pyramid with the taller parity sequence.
inline Pyramid concat(const Pyramid& a, const Pyramid& b) {
    if (a.level() == 0) return b;
    if (b.level() == 0) return a;
    const Pyramid& tall = (a.height_bound() >= b.height_bound()) ? a : b;
    const Pyramid& low = (a.height_bound() >= b.height_bound()) ? b : a;
    const int shift = tall.height_bound() - low.height_bound();
    for (int i = 1; i <= low.height_bound(); ++i)
        if (low.p_row(i) > 0 && low.parity.at(i) != tall.parity.at(i + shift))
            throw std::invalid_argument("parity sequences disagree on a shared row");
    Pyramid out;
    out.parity = tall.parity;
    out.q = a.q;
    out.q.insert(out.q.end(), b.q.begin(), b.q.end());
    out.k = 1;
    for (size_t c = 1; c < out.q.size(); ++c)
        if (out.q[c] > out.q[out.k - 1]) out.k = static_cast<int>(c) + 1;
    out.finalize();
    return out;
}

// s-compatibility: every box in each row of pi' (x) pi'' has one parity.
// Expects pi' right-justified and pi'' left-justified.
inline bool s_compatible(const Pyramid& a, const Pyramid& b) {
    if (a.level() == 0 || b.level() == 0) return true;
    // compare parities on rows where both pyramids have boxes, aligned at the bottom
    for (int ia = 1; ia <= a.height_bound(); ++ia) {
        if (a.p_row(ia) == 0) continue;
        const int from_bottom = a.height_bound() - ia;  // 0 = bottom row
        const int ib = b.height_bound() - from_bottom;
        if (ib >= 1 && ib <= b.height_bound() && b.p_row(ib) > 0)
            if (a.parity.at(ia) != b.parity.at(ib)) return false;
    }
    return true;
}

// Label translation data of eq:iotadef between pyramids with equal row lengths:
// E_j^{(r)} of pi corresponds to E_j^{(r + e_shift[j])} of vec pi, same for F.
struct TabShiftData {
    std::vector<int> e_shift, f_shift;  // index j = 1..m+n-1 (0 unused)
};

inline TabShiftData tab_shift_data(const Pyramid& pi, const Pyramid& vec_pi) {
    if (pi.height_bound() != vec_pi.height_bound())
        throw std::invalid_argument("height mismatch");
    for (int i = 1; i <= pi.height_bound(); ++i)
        if (pi.p_row(i) != vec_pi.p_row(i))
            throw std::invalid_argument("row lengths differ; no iota translation");
    ShiftMatrix s = shift_matrix_of(pi), t = shift_matrix_of(vec_pi);
    TabShiftData out;
    const int mn = pi.height_bound();
    out.e_shift.assign(mn, 0);
    out.f_shift.assign(mn, 0);
    for (int j = 1; j < mn; ++j) {
        out.e_shift[j] = -s.at(j, j + 1) + t.at(j, j + 1);
        out.f_shift[j] = -s.at(j + 1, j) + t.at(j + 1, j);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tableaux

struct PiTableau {
    Pyramid pi;
    std::vector<Rat> entry;  // indexed by flat box label, [0] unused

    PiTableau() = default;
    explicit PiTableau(Pyramid p) : pi(std::move(p)), entry(pi.boxes() + 1, Rat(0)) {}

    Rat& at_box(int b) { return entry.at(b); }
    const Rat& at_box(int b) const { return entry.at(b); }
    Rat& at(int r, int c) {
        int b = pi.box_at(r, c);
        if (!b) throw std::out_of_range("no box at that position");
        return entry.at(b);
    }
    const Rat& at(int r, int c) const {
        int b = pi.box_at(r, c);
        if (!b) throw std::out_of_range("no box at that position");
        return entry.at(b);
    }

    // Entries of row i ordered by column.
    std::vector<Rat> row_entries(int i) const {
        std::vector<Rat> out;
        for (int c = 1; c <= pi.level(); ++c)
            if (int b = pi.box_at(i, c)) out.push_back(entry.at(b));
        return out;
    }
    std::vector<Rat> row_sorted(int i) const {
        auto v = row_entries(i);
        std::sort(v.begin(), v.end());
        return v;
    }
};

inline bool row_equiv(const PiTableau& a, const PiTableau& b) {
    if (!(a.pi.q == b.pi.q) || !(a.pi.parity == b.pi.parity)) return false;
    for (int i = 1; i <= a.pi.height_bound(); ++i)
        if (a.row_sorted(i) != b.row_sorted(i)) return false;
    return true;
}

inline bool col_equiv(const PiTableau& a, const PiTableau& b) {
    if (!(a.pi.q == b.pi.q) || !(a.pi.parity == b.pi.parity)) return false;
    for (int c = 1; c <= a.pi.level(); ++c)
        for (int pa : {0, 1}) {
            std::vector<Rat> va, vb;
            for (int r = 1; r <= a.pi.height_bound(); ++r)
                if (int bx = a.pi.box_at(r, c); bx && a.pi.pa(bx) == pa) {
                    va.push_back(a.at_box(bx));
                    vb.push_back(b.at_box(bx));
                }
            std::sort(va.begin(), va.end());
            std::sort(vb.begin(), vb.end());
            if (va != vb) return false;
        }
    return true;
}

// Row equivalence class: rows stored as sorted multisets.
struct RowTab {
    Pyramid pi;
    std::vector<std::vector<Rat>> rows;  // rows[i], i = 1..m+n ([0] unused)

    RowTab() = default;
    explicit RowTab(const PiTableau& t) : pi(t.pi) {
        rows.resize(pi.height_bound() + 1);
        for (int i = 1; i <= pi.height_bound(); ++i) rows[i] = t.row_sorted(i);
    }
    RowTab(Pyramid p, std::vector<std::vector<Rat>> r) : pi(std::move(p)), rows(std::move(r)) {
        if (static_cast<int>(rows.size()) != pi.height_bound() + 1)
            throw std::invalid_argument("row count mismatch");
        for (int i = 1; i <= pi.height_bound(); ++i) {
            if (static_cast<int>(rows[i].size()) != pi.p_row(i))
                throw std::invalid_argument("row length mismatch");
            std::sort(rows[i].begin(), rows[i].end());
        }
    }

    // Canonical representative: sorted entries placed left to right.
    PiTableau representative() const {
        PiTableau t(pi);
        for (int i = 1; i <= pi.height_bound(); ++i) {
            int j = 0;
            for (int c = 1; c <= pi.level(); ++c)
                if (int b = pi.box_at(i, c)) t.at_box(b) = rows[i][j++];
        }
        return t;
    }
    bool operator==(const RowTab& o) const {
        return pi.q == o.pi.q && pi.parity == o.pi.parity && rows == o.rows;
    }
};

// Column strictness for standard pyramids: down each column, even entries
// strictly decrease and odd entries strictly increase w.r.t. the order
// x >= y iff x - y is a natural number.
inline bool column_strict(const PiTableau& t) {
    if (!t.pi.parity.standard())
        throw std::invalid_argument("column_strict requires a standard pyramid");
    for (int c = 1; c <= t.pi.level(); ++c)
        for (int pa : {0, 1}) {
            std::vector<Rat> vals;
            for (int r = 1; r <= t.pi.height_bound(); ++r)
                if (int b = t.pi.box_at(r, c); b && t.pi.pa(b) == pa) vals.push_back(t.at_box(b));
            for (size_t j = 1; j < vals.size(); ++j) {
                Rat d = vals[j - 1] - vals[j];
                if (pa == 1) d = -d;  // odd: increasing downwards
                if (!is_integer(d) || sgn(d) <= 0) return false;
            }
        }
    return true;
}

namespace detail {
inline bool colstrict_search(const RowTab& tab, int row, PiTableau& acc) {
    const Pyramid& pi = tab.pi;
    if (row > pi.height_bound()) return true;
    std::vector<Rat> perm = tab.rows[row];
    // entries already sorted; iterate over distinct permutations
    std::sort(perm.begin(), perm.end());
    do {
        bool ok = true;
        int j = 0;
        for (int c = 1; c <= pi.level() && ok; ++c) {
            int b = pi.box_at(row, c);
            if (!b) continue;
            acc.at_box(b) = perm[j++];
            // check against nearest same-parity box above in this column
            for (int r2 = row - 1; r2 >= 1; --r2) {
                int b2 = pi.box_at(r2, c);
                if (!b2) break;
                if (pi.pa(b2) != pi.pa(b)) continue;
                Rat d = acc.at_box(b2) - acc.at_box(b);
                if (pi.pa(b) == 1) d = -d;
                if (!is_integer(d) || sgn(d) <= 0) ok = false;
                break;
            }
        }
        if (ok && colstrict_search(tab, row + 1, acc)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}
}  // namespace detail

// Does the row class have a column-strict representative? (Thm on Col(pi)
// membership is decided by direct search over within-row permutations.)
inline bool has_column_strict_representative(const RowTab& tab) {
    if (!tab.pi.parity.standard())
        throw std::invalid_argument("requires a standard pyramid");
    PiTableau acc(tab.pi);
    return detail::colstrict_search(tab, 1, acc);
}

}  // namespace wsuper
