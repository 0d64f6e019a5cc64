#pragma once

// Canonical multiplicative l-weights built from y_{i,a} factors, truncated
// Gelfand-Tsetlin characters, the supertuple character formula, and the
// Drinfeld-polynomial finite-dimensionality criterion.

#include <optional>

#include "wsuper/combinat.hpp"
#include "wsuper/report.hpp"

namespace wsuper {

// l-weight: coordinate i carries lambda_i(u) = prod (1 + (a + kappa_i) u^{-1})^e,
// stored as the reduced multiset {a -> e}.
struct LWeight {
    ParitySeq parity;        // row parities (fixes kappa)
    std::vector<Rat> kappa;  // 1-based
    std::vector<std::map<Rat, long>> f;  // 1-based coordinate factors

    LWeight() = default;
    explicit LWeight(const ParitySeq& s) : parity(s) {
        const int mn = s.size();
        kappa.assign(mn + 1, Rat(0));
        for (int i = 1; i <= mn; ++i)
            kappa[i] = (i == 1) ? Rat(s.at(1) == 1 ? 0 : -1)
                                : Rat(kappa[i - 1] + rat(s.at(i) + s.at(i - 1), 2));
        f.assign(mn + 1, {});
    }

    int coords() const { return parity.size(); }

    void mul_y(int i, const Rat& a, long e = 1) {
        if (e == 0) return;
        if (a + kappa.at(i) == 0) return;  // y_{i,-kappa_i} is the constant series 1
        auto& m = f.at(i);
        auto it = m.find(a);
        if (it == m.end()) m.emplace(a, e);
        else {
            it->second += e;
            if (it->second == 0) m.erase(it);
        }
    }
    LWeight& operator*=(const LWeight& o) {
        for (int i = 1; i <= coords(); ++i)
            for (auto& [a, e] : o.f.at(i)) mul_y(i, a, e);
        return *this;
    }
    friend LWeight operator*(LWeight a, const LWeight& b) { return a *= b; }

    bool operator==(const LWeight& o) const { return f == o.f; }
    bool operator<(const LWeight& o) const { return f < o.f; }

    // lambda_i^{(1)} = sum e (a + kappa_i)
    Rat first_coeff(int i) const {
        Rat out(0);
        for (auto& [a, e] : f.at(i)) out += Rat(e) * (a + kappa.at(i));
        return out;
    }
    // associated weight: coordinates of varpi in the epsilon basis
    std::vector<Rat> varpi() const {
        std::vector<Rat> out(coords() + 1, Rat(0));
        for (int i = 1; i <= coords(); ++i) out[i] = Rat(parity.at(i)) * first_coeff(i);
        return out;
    }
    // truncated series rendering of coordinate i (coefficients of u^{-r})
    std::vector<Rat> series(int i, int order) const {
        std::vector<Rat> c(order + 1, Rat(0));
        c[0] = 1;
        for (auto& [a, e] : f.at(i)) {
            Rat root = a + kappa.at(i);
            std::vector<Rat> fac(order + 1, Rat(0));
            fac[0] = 1;
            if (e > 0) {
                for (long t = 0; t < e; ++t) {
                    for (int r = order; r >= 1; --r) fac[r] += root * fac[r - 1];
                }
            } else {
                // (1 + root u^{-1})^{-1} = sum (-root)^r u^{-r}
                std::vector<Rat> inv(order + 1, Rat(0));
                inv[0] = 1;
                for (int r = 1; r <= order; ++r) inv[r] = -root * inv[r - 1];
                for (long t = 0; t < -e; ++t) {
                    std::vector<Rat> nf(order + 1, Rat(0));
                    for (int r = 0; r <= order; ++r)
                        for (int s = 0; r + s <= order; ++s) nf[r + s] += fac[r] * inv[s];
                    fac = nf;
                }
            }
            std::vector<Rat> nc(order + 1, Rat(0));
            for (int r = 0; r <= order; ++r)
                for (int s = 0; r + s <= order; ++s) nc[r + s] += c[r] * fac[s];
            c = nc;
        }
        return c;
    }
    std::string str() const {
        std::string out = "[";
        for (int i = 1; i <= coords(); ++i) {
            if (i > 1) out += "; ";
            bool first = true;
            for (auto& [a, e] : f.at(i)) {
                out += (first ? "" : " ") + std::string("y(") + to_string(a) + ")^" +
                       std::to_string(e);
                first = false;
            }
            if (f.at(i).empty()) out += "1";
        }
        return out + "]";
    }
};

inline LWeight y_weight(const ParitySeq& s, int i, const Rat& a) {
    LWeight w(s);
    w.mul_y(i, a);
    return w;
}

// Height of the dominance drop from hw to term; nullopt if the difference is
// not a nonnegative integral sum of simple roots.
inline std::optional<long> dominance_drop(const LWeight& hw, const LWeight& term) {
    std::vector<Rat> a = hw.varpi(), b = term.varpi();
    Rat acc(0);
    long ht = 0;
    for (int i = 1; i < static_cast<int>(a.size()); ++i) {
        acc += a[i] - b[i];
        if (i < static_cast<int>(a.size()) - 1) {
            if (!is_integer(acc) || sgn(acc) < 0) return std::nullopt;
            ht += acc.get_num().get_si();
        }
    }
    if (sgn(acc) != 0) return std::nullopt;  // total difference must vanish
    return ht;
}

// Truncated character: multiplicities of l-weights within `depth` of the
// highest one.
struct Character {
    LWeight hw;
    int depth = 0;
    std::map<LWeight, long> mult;

    void add(const LWeight& w, long m) {
        if (m == 0) return;
        auto it = mult.find(w);
        if (it == mult.end()) mult.emplace(w, m);
        else {
            it->second += m;
            if (it->second == 0) mult.erase(it);
        }
    }
    bool operator==(const Character& o) const { return mult == o.mult; }

    friend Character multiply(const Character& x, const Character& y) {
        Character out;
        out.hw = x.hw * y.hw;
        out.depth = std::min(x.depth, y.depth);
        for (auto& [a, ma] : x.mult)
            for (auto& [b, mb] : y.mult) {
                LWeight w = a * b;
                auto drop = dominance_drop(out.hw, w);
                if (!drop || *drop > out.depth) continue;
                out.add(w, ma * mb);
            }
        return out;
    }
    Character truncated(int d) const {
        Character out;
        out.hw = hw;
        out.depth = d;
        for (auto& [w, m] : mult) {
            auto drop = dominance_drop(hw, w);
            if (drop && *drop <= d) out.add(w, m);
        }
        return out;
    }
};

// tab_to_lweight (eq:lam-tab): coordinate i collects y_{i, a_{i,j}}.
inline LWeight tab_to_lweight(const RowTab& tab) {
    LWeight w(tab.pi.parity);
    for (int i = 1; i <= tab.pi.height_bound(); ++i)
        for (const Rat& a : tab.rows.at(i)) w.mul_y(i, a);
    return w;
}

// Inverse where defined: coordinate i must consist of exactly p_i factors
// with exponent +1.
inline std::optional<RowTab> lweight_to_tab(const LWeight& w, const Pyramid& pi) {
    std::vector<std::vector<Rat>> rows(pi.height_bound() + 1);
    for (int i = 1; i <= pi.height_bound(); ++i) {
        long total = 0;
        for (auto& [a, e] : w.f.at(i)) {
            if (e < 0) return std::nullopt;
            for (long t = 0; t < e; ++t) rows[i].push_back(a);
            total += e;
        }
        if (total != pi.p_row(i)) return std::nullopt;
    }
    return RowTab(pi, rows);
}

// ---------------------------------------------------------------------------
// Character formula (eq:ch-Verma): sum over supertuples c = (c_{i,j,k}).

inline Character ch_formula(const RowTab& tab, int depth) {
    const Pyramid& pi = tab.pi;
    const int mn = pi.height_bound();
    const ParitySeq& sp = pi.parity;

    // index the supertuple slots (i, j, k), each unit costing height k - i
    struct Slot {
        int i, j, k, cost;
        bool capped;  // c <= 1 when parities differ
    };
    std::vector<Slot> slots;
    for (int i = 1; i < mn; ++i)
        for (int j = 1; j <= pi.p_row(i); ++j)
            for (int k = i + 1; k <= mn; ++k)
                slots.push_back({i, j, k, k - i, sp.at(i) != sp.at(k)});

    Character out;
    out.hw = tab_to_lweight(tab);
    out.depth = depth;

    std::vector<int> c(slots.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t at, int budget) {
        if (at == slots.size()) {
            // assemble the monomial for this supertuple
            LWeight w(sp);
            for (int i = 1; i <= mn; ++i) {
                int jmax = pi.p_row(i);
                for (int j = 1; j <= jmax; ++j) {
                    const Rat a = tab.rows.at(i).at(j - 1);
                    // tail sums S_t = c_{i,j,t} + ... + c_{i,j,mn}
                    std::vector<long> S(mn + 2, 0);
                    for (int t = mn; t > i; --t) {
                        long cv = 0;
                        for (size_t s = 0; s < slots.size(); ++s)
                            if (slots[s].i == i && slots[s].j == j && slots[s].k == t)
                                cv = c[s];
                        S[t] = S[t + 1] + cv;
                    }
                    const Rat si(sp.at(i));
                    w.mul_y(i, a - si * Rat(S[i + 1]));
                    for (int k = i + 1; k <= mn; ++k) {
                        long e = sp.at(i) * sp.at(k);
                        w.mul_y(k, a - si * Rat(S[k + 1]), e);
                        w.mul_y(k, a - si * Rat(S[k]), -e);
                    }
                }
            }
            out.add(w, 1);
            return;
        }
        rec(at + 1, budget);
        const Slot& sl = slots[at];
        int maxc = sl.capped ? 1 : budget / sl.cost;
        for (int v = 1; v <= maxc && v * sl.cost <= budget; ++v) {
            c[at] = v;
            rec(at + 1, budget - v * sl.cost);
        }
        c[at] = 0;
    };
    rec(0, depth);
    return out;
}

// ---------------------------------------------------------------------------
// Drinfeld polynomial criterion (standard parity).

struct DrinfeldWitness {
    bool finite = false;
    // per j < m+n: multisets of roots (value -> multiplicity), P monic
    std::vector<std::map<Rat, long>> P, Q;
    std::vector<int> d;  // degrees d_j
};

namespace detail {
// net multiplicity function of lambda_j / lambda_{j+1} as a rational function
// of u: root value -> exponent; the u-power goes to root 0.
inline std::map<Rat, long> ratio_roots(const LWeight& w, int j) {
    std::map<Rat, long> nu;
    auto add = [&](const Rat& c, long e) {
        if (e == 0) return;
        auto it = nu.find(c);
        if (it == nu.end()) nu.emplace(c, e);
        else {
            it->second += e;
            if (it->second == 0) nu.erase(it);
        }
    };
    long degj = 0, degj1 = 0;
    for (auto& [a, e] : w.f.at(j)) {
        add(a + w.kappa.at(j), e);
        degj += e;
    }
    for (auto& [a, e] : w.f.at(j + 1)) {
        add(a + w.kappa.at(j + 1), -e);
        degj1 += e;
    }
    add(Rat(0), degj1 - degj);  // u^{-deg} normalizations
    return nu;
}
}  // namespace detail

// Decide Thm 4.10 for a standard parity sequence; sigma supplies the degrees
// d_j = s_{j,j+1} + s_{j+1,j}.
inline DrinfeldWitness drinfeld_check(const LWeight& w, const ShiftMatrix& sigma) {
    if (!w.parity.standard())
        throw std::invalid_argument(
            "the Drinfeld criterion is implemented for standard parity only (the general "
            "criterion is open)");
    const int mn = w.coords();
    const int m = w.parity.m();
    DrinfeldWitness out;
    out.P.assign(mn, {});
    out.Q.assign(mn, {});
    out.d.assign(mn, 0);
    for (int j = 1; j < mn; ++j) {
        std::map<Rat, long> nu = detail::ratio_roots(w, j);
        const int dj = sigma.at(j, j + 1) + sigma.at(j + 1, j);
        out.d[j] = dj;
        if (j == m) {
            // any rational ratio works; P = numerator, Q = denominator
            for (auto& [c, e] : nu) {
                if (e > 0) out.P[j][c] = e;
                else out.Q[j][c] = -e;
            }
            continue;
        }
        const int sj = w.parity.at(j);
        // h = nu - d_j delta_0; solve p(c) - p(c + sj) = h(c) + q(c) with
        // p, q >= 0 finitely supported and coprime (q only where p = 0).
        std::map<Rat, long> h = nu;
        {
            auto it = h.find(Rat(0));
            long v = (it == h.end() ? 0 : it->second) - dj;
            if (it != h.end()) h.erase(it);
            if (v != 0) h.emplace(Rat(0), v);
        }
        // group the support by coset of Z
        std::map<Rat, std::map<Rat, long>> cosets;  // representative in [0,1)
        auto rep = [&](const Rat& c) {
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
            return Rat(c - Rat(fl));
        };
        for (auto& [c, e] : h) cosets[rep(c)][c] = e;
        bool ok = true;
        // p(c) = sum_{t >= 0} (h+q)(c + t*sj): walk each coset against the
        // +sj direction, placing q greedily exactly when the running suffix
        // sum would go negative (the unique coprime placement), and reading
        // off p at every intermediate step.
        for (auto& [r0, hc] : cosets) {
            const Rat top = (sj == 1) ? hc.rbegin()->first : hc.begin()->first;
            const Rat bot = (sj == 1) ? hc.begin()->first : hc.rbegin()->first;
            long run = 0;
            for (Rat c = top;; c -= Rat(sj)) {
                auto it = hc.find(c);
                if (it != hc.end()) run += it->second;
                if (run < 0) {
                    out.Q[j][c] = -run;
                    run = 0;
                } else if (run > 0) {
                    out.P[j][c] = run;
                }
                if (c == bot) break;
            }
            if (run > 0) { ok = false; break; }  // p would have infinite support
        }
        if (!ok) {
            out.finite = false;
            return out;
        }
        // exact witness re-verification: nu + shift(p) + q == p + d_j delta_0
        std::map<Rat, long> lhs = nu, rhs;
        for (auto& [c, e] : out.P[j]) lhs[c - Rat(sj)] += e;  // P(u - sj) roots
        for (auto& [c, e] : out.Q[j]) lhs[c] += e;
        for (auto& [c, e] : out.P[j]) rhs[c] += e;
        rhs[Rat(0)] += dj;
        for (auto it = lhs.begin(); it != lhs.end();)
            it = it->second == 0 ? lhs.erase(it) : std::next(it);
        for (auto it = rhs.begin(); it != rhs.end();)
            it = it->second == 0 ? rhs.erase(it) : std::next(it);
        long qdeg = 0;
        for (auto& [c, e] : out.Q[j]) qdeg += e;
        if (lhs != rhs || qdeg != dj) {
            out.finite = false;
            return out;
        }
    }
    out.finite = true;
    return out;
}

// Thm 5.2 vs Thm 4.10 on one tableau.
struct CriterionComparison {
    bool column_strict = false;
    bool drinfeld = false;
    DrinfeldWitness witness;
    bool agree() const { return column_strict == drinfeld; }
};

inline CriterionComparison colstrict_vs_criterion(const RowTab& tab) {
    if (!tab.pi.parity.standard())
        throw std::invalid_argument("needs a standard pyramid");
    CriterionComparison out;
    out.column_strict = has_column_strict_representative(tab);
    out.witness = drinfeld_check(tab_to_lweight(tab), shift_matrix_of(tab.pi));
    out.drinfeld = out.witness.finite;
    return out;
}

}  // namespace wsuper
