#pragma once

// Gauss data of W(pi) inside U(p): the D/E/F generating series, higher root
// elements, the T-matrix recomposition, H-series, quantum Berezinian, the
// vanishing window of the T-coefficients, the structural series relations,
// and the Appendix block-decomposition checks.

#include <functional>

#include "wsuper/report.hpp"
#include "wsuper/series.hpp"
#include "wsuper/wgen.hpp"

namespace wsuper {

struct GaussData {
    Pyramid pi;
    Ctx ctx;
    ShiftMatrix sigma;
    int order = 0;
    // 1-based in [i][j]; E[i][j] for i<j, F[j][i] for i<j, D[i], Dp[i]
    std::vector<Series<EnvElement>> D, Dp;
    std::vector<std::vector<Series<EnvElement>>> E, F;

    const Series<EnvElement>& e_ij(int i, int j) const { return E.at(i).at(j); }
    const Series<EnvElement>& f_ji(int j, int i) const { return F.at(j).at(i); }

    int row_parity(int i) const { return pi.parity.at(i) == 1 ? 0 : 1; }
    int epar(int i, int j) const { return row_parity(i) ^ row_parity(j); }

    // T_{i,j}(u) = sum_k F_{i,k} D_k E_{k,j}   (eq:GD-shift)
    Series<EnvElement> t_series(int i, int j) const {
        const EnvElement zero(ctx);
        Series<EnvElement> acc(order, zero);
        for (int k = 1; k <= std::min(i, j); ++k) {
            Series<EnvElement> term = D[k];
            if (k < i) term = F[i][k] * term;
            if (k < j) term = term * E[k][j];
            acc = acc + term;
        }
        return acc;
    }
    SeriesMatrix<EnvElement> t_matrix() const {
        const int mn = pi.height_bound();
        SeriesMatrix<EnvElement> T(mn, mn, order, EnvElement(ctx));
        for (int i = 1; i <= mn; ++i)
            for (int j = 1; j <= mn; ++j) T.at(i, j) = t_series(i, j);
        return T;
    }

    // H_i(u) = D_i(u)^{-1} D_{i+1}(u)   (eq:def-H)
    Series<EnvElement> h_series(int i) const { return Dp.at(i) * D.at(i + 1); }

    // C(u) = prod_i D_i(u - kappa_i)^{s_i}   (eq:Ber)
    Series<EnvElement> berezinian() const {
        Series<EnvElement> acc = Series<EnvElement>::one(order, EnvElement(ctx));
        for (int i = 1; i <= pi.height_bound(); ++i) {
            Series<EnvElement> f = D[i].recentered(pi.kappa.at(i));
            if (pi.parity.at(i) == -1) f = f.inverse();
            acc = acc * f;
        }
        return acc;
    }
};

// Build D/E/F from the generator engine: base series from t_parab, higher
// root elements by the inductive rule (gedef)/(gfdef).  With `mu_route` the
// coefficients are the Miura images instead (mu is an algebra map, so the
// same recursions apply).
inline GaussData make_gauss(WGen& w, int order, bool mu_route = false) {
    GaussData g;
    g.pi = w.pyramid();
    g.ctx = w.ctx();
    g.sigma = w.sigma();
    g.order = order;
    const int mn = g.pi.height_bound();
    const EnvElement zero(g.ctx);
    g.D.assign(mn + 1, Series<EnvElement>(order, zero));
    g.Dp.assign(mn + 1, Series<EnvElement>(order, zero));
    g.E.assign(mn + 1, std::vector<Series<EnvElement>>(mn + 1, Series<EnvElement>(order, zero)));
    g.F.assign(mn + 1, std::vector<Series<EnvElement>>(mn + 1, Series<EnvElement>(order, zero)));
    for (int i = 1; i <= mn; ++i) {
        g.D[i] = Series<EnvElement>(order, zero);
        g.D[i].at(0) = EnvElement::one(g.ctx);
        for (int r = 1; r <= order; ++r)
            g.D[i].at(r) = mu_route ? w.mu_t_parab(i, i, i - 1, r) : w.t_parab(i, i, i - 1, r);
        g.Dp[i] = g.D[i].inverse();
    }
    for (int i = 1; i < mn; ++i) {
        for (int r = g.sigma.at(i, i + 1) + 1; r <= order; ++r)
            g.E[i][i + 1].at(r) =
                mu_route ? w.mu_t_parab(i, i + 1, i, r) : w.t_parab(i, i + 1, i, r);
        for (int r = g.sigma.at(i + 1, i) + 1; r <= order; ++r)
            g.F[i + 1][i].at(r) =
                mu_route ? w.mu_t_parab(i + 1, i, i, r) : w.t_parab(i + 1, i, i, r);
    }
    auto bracket = [&](const EnvElement& a, const EnvElement& b, int pa, int pb) {
        EnvElement out = a * b;
        EnvElement ba = b * a;
        if (pa && pb) out += ba; else out -= ba;
        return out;
    };
    for (int span = 2; span < mn; ++span)
        for (int i = 1; i + span <= mn; ++i) {
            const int j = i + span;
            const int s = g.sigma.at(j - 1, j);
            const int sf = g.sigma.at(j, j - 1);
            const Rat sj1(g.pi.parity.at(j - 1));
            const EnvElement estep = g.E[j - 1][j].at(s + 1);
            const EnvElement fstep = g.F[j][j - 1].at(sf + 1);
            for (int r = g.sigma.at(i, j) + 1; r <= order; ++r) {
                // E_{i,j}^{(r)} = s_{j-1} [E_{i,j-1}^{(r - s_{j-1,j})}, E_{j-1}^{(s_{j-1,j}+1)}]
                EnvElement x =
                    bracket(g.E[i][j - 1].at(r - s), estep, g.epar(i, j - 1), g.epar(j - 1, j));
                x *= sj1;
                g.E[i][j].at(r) = x;
            }
            for (int r = g.sigma.at(j, i) + 1; r <= order; ++r) {
                // F_{j,i}^{(r)} = s_{j-1} [F_{j-1}^{(s_{j,j-1}+1)}, F_{j-1,i}^{(r - s_{j,j-1})}]
                EnvElement x =
                    bracket(fstep, g.F[j - 1][i].at(r - sf), g.epar(j - 1, j), g.epar(j - 1, i));
                x *= sj1;
                g.F[j][i].at(r) = x;
            }
        }
    return g;
}

// ---------------------------------------------------------------------------
// Vanishing suite (Thm 3.4): T_{i,j}^{(r)} = 0 exactly above the window, and
// the boundary coefficient is nonzero for at least one pair per pyramid.

inline Report verify_vanishing(const GaussData& g, int r_max) {
    Report rep;
    const int mn = g.pi.height_bound();
    int needed = 0;
    for (int i = 1; i <= mn; ++i)
        for (int j = 1; j <= mn; ++j)
            needed = std::max(needed, g.sigma.at(i, j) + g.pi.p_row(std::min(i, j)));
    if (r_max < needed + 1)
        throw std::invalid_argument("vanishing: r_max below the theorem window, need at least " +
                                    std::to_string(needed + 1));
    if (r_max > g.order) throw std::invalid_argument("vanishing: order too small for r_max");
    bool boundary_nonzero = false;
    bool has_boxes = false;
    for (int i = 1; i <= mn; ++i)
        for (int j = 1; j <= mn; ++j) {
            Series<EnvElement> t = g.t_series(i, j);
            const int edge = g.sigma.at(i, j) + g.pi.p_row(std::min(i, j));
            for (int r = edge + 1; r <= r_max; ++r)
                rep.add("vanishing", "T", {i, j, r}, t.at(r).is_zero(),
                        t.at(r).is_zero() ? "" : t.at(r).str());
            if (g.pi.p_row(std::min(i, j)) >= 1) {
                has_boxes = true;
                if (!t.at(edge).is_zero()) boundary_nonzero = true;
            }
        }
    if (has_boxes) rep.add("vanishing", "boundary-nonzero", {}, boundary_nonzero);
    return rep;
}

// ---------------------------------------------------------------------------
// Centrality of a series' coefficients against all window generators.

inline Report verify_central(const Series<EnvElement>& s, WGen& w, const std::string& label) {
    Report rep;
    const Pyramid& pi = w.pyramid();
    const int mn = pi.height_bound();
    std::vector<std::pair<std::vector<int>, EnvElement>> gens;
    for (int i = 1; i <= mn; ++i)
        for (int r = 1; r <= w.d_window(i); ++r)
            gens.push_back({{0, i, r}, w.t_parab(i, i, i - 1, r)});
    for (int i = 1; i < mn; ++i) {
        auto [elo, ehi] = w.e_window(i);
        for (int r = elo + 1; r <= ehi; ++r) gens.push_back({{1, i, r}, w.t_parab(i, i + 1, i, r)});
        auto [flo, fhi] = w.f_window(i);
        for (int r = flo + 1; r <= fhi; ++r) gens.push_back({{2, i, r}, w.t_parab(i + 1, i, i, r)});
    }
    for (int r = 1; r <= s.order(); ++r) {
        if (s.at(r).is_zero()) continue;
        for (auto& [idx, gen] : gens) {
            EnvElement br = super_bracket(s.at(r), gen);
            std::vector<int> indices = {r};
            indices.insert(indices.end(), idx.begin(), idx.end());
            rep.add("central", label, indices, br.is_zero(), br.is_zero() ? "" : br.str());
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Structural series relations in W(pi) for a left-justified pyramid, plus the
// string-vanishing corollary for opposite-parity rows.

namespace detail {
using ESeries = Series<EnvElement>;
using EGrid = DoubleSeries<EnvElement>;

// A(u) B(v): coefficient (r,s) = A_r * B_s
inline EGrid uv(const ESeries& A, const ESeries& B) { return EGrid::outer(A, B); }
// B(v) A(u): coefficient (r,s) = B_s * A_r
inline EGrid vu(const ESeries& B, const ESeries& A) {
    int n = std::min(A.order(), B.order());
    EGrid out(n, A.model());
    for (int r = 0; r <= n; ++r)
        for (int s = 0; s <= n; ++s) {
            if (RingOps<EnvElement>::is_zero(B.at(s)) || RingOps<EnvElement>::is_zero(A.at(r)))
                continue;
            out.at(r, s) = B.at(s) * A.at(r);
        }
    return out;
}
inline EGrid u_only(const ESeries& A) {
    EGrid out(A.order(), A.model());
    for (int r = 0; r <= A.order(); ++r) out.at(r, 0) = A.at(r);
    return out;
}
// P(u) Q(v) R(u): coefficient (r,s) = sum_{a+b=r} P_a Q_s R_b
inline EGrid uvu(const ESeries& P, const ESeries& Q, const ESeries& R) {
    int n = std::min({P.order(), Q.order(), R.order()});
    EGrid out(n, P.model());
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
            if (RingOps<EnvElement>::is_zero(P.at(a)) || RingOps<EnvElement>::is_zero(R.at(b)))
                continue;
            for (int s = 0; s <= n; ++s) {
                if (RingOps<EnvElement>::is_zero(Q.at(s))) continue;
                out.at(a + b, s) += P.at(a) * Q.at(s) * R.at(b);
            }
        }
    return out;
}
inline EGrid bracket_grid(const ESeries& A, const ESeries& B, int pa, int pb) {
    EGrid out = uv(A, B);
    EGrid rev = vu(B, A);
    if (pa && pb) return out + rev;
    return out - rev;
}
}  // namespace detail

inline int row_parity_prod(const Pyramid& pi, int i, int j, int k) {
    int bi = pi.parity.at(i) == 1 ? 0 : 1;
    int bj = pi.parity.at(j) == 1 ? 0 : 1;
    int bk = pi.parity.at(k) == 1 ? 0 : 1;
    return (bi * bj + bi * bk + bj * bk) & 1;
}

inline Report verify_structural_relations(const GaussData& g) {
    using namespace detail;
    Report rep;
    const Pyramid& pi = g.pi;
    for (size_t c = 1; c < pi.q.size(); ++c)
        if (pi.q[c] > pi.q[c - 1])
            throw std::invalid_argument("structural relations require a left-justified pyramid");

    const int mn = pi.height_bound();
    const EnvElement zero(g.ctx);
    auto sgn = [&](int i) { return Rat(pi.parity.at(i)); };

    auto record = [&](const char* id, std::vector<int> idx, const EGrid& lhs, const EGrid& rhs) {
        int n = std::min(lhs.order(), rhs.order());
        EGrid diff = lhs.shrink(n) - rhs.shrink(n);
        rep.add("structural", id, std::move(idx), diff.is_zero());
    };

    // chains i < i_1 < ... < i_r <= bound with head factor F_{head, i_r}(u),
    // value sum_r (-1)^r F_{head,i_r}(u)...F_{i_2,i_1}(u)
    //                    (F_{i_1,i}(v) - F_{i_1,i}(u)) tail(u).
    auto chain_sum = [&](int i, int bound, int head, const ESeries& tail) {
        EGrid acc(g.order, zero);
        std::vector<int> chain;
        std::function<void(int)> rec = [&](int lo) {
            ESeries pre = Series<EnvElement>::one(g.order, zero);
            if (!chain.empty()) {
                int prev = head;
                ESeries prod = Series<EnvElement>::one(g.order, zero);
                for (int t = static_cast<int>(chain.size()) - 1; t >= 0; --t) {
                    prod = prod * g.f_ji(prev, chain[t]);
                    prev = chain[t];
                }
                pre = prod;
            }
            const int i1 = chain.empty() ? head : chain.front();
            const ESeries& fv = g.f_ji(i1, i);
            EGrid term = uvu(pre, fv, tail) - u_only(pre * fv * tail);
            if (chain.size() % 2) term *= Rat(-1);
            acc = acc + term;
            for (int next = lo; next <= bound; ++next) {
                chain.push_back(next);
                rec(next + 1);
                chain.pop_back();
            }
        };
        rec(i + 1);
        return acc;
    };

    const ESeries one = Series<EnvElement>::one(g.order, zero);

    for (int i = 1; i <= mn; ++i)
        for (int j = i + 1; j <= mn; ++j) {
            ESeries X = g.f_ji(j, i) * g.D[i];
            // part (1)
            if (pi.parity.at(i) == pi.parity.at(j)) {
                EGrid lhs = uv(X, X) - vu(X, X);
                record("rel1-same", {i, j}, lhs, EGrid(g.order, zero));
            } else {
                EGrid G = uv(X, X), H = vu(X, X);
                EGrid lhs = G.mul_u() - G.mul_v() - (G * sgn(j)).shrink(G.order() - 1);
                EGrid rhs = H.mul_v() - H.mul_u() - (H * sgn(j)).shrink(H.order() - 1);
                record("rel1-diff", {i, j}, lhs, rhs);
                // Corollary: F_{ji}(u)D_i(u) F_{ji}(u-s_i)D_i(u-s_i) = 0
                ESeries Xs = X.recentered(Rat(pi.parity.at(i)));
                ESeries prod = X * Xs;
                rep.add("structural", "string-vanishing", {i, j}, prod.is_zero());
            }
            // part (3): [D_k(u), F_{j,i}(v)] = 0 for k < i or k > j
            for (int k = 1; k <= mn; ++k) {
                if (k >= i && k <= j) continue;
                EGrid lhs = bracket_grid(g.D[k], g.f_ji(j, i), 0, g.epar(i, j));
                record("rel3", {i, j, k}, lhs, EGrid(g.order, zero));
            }
            // part (4): (u-v)[D_i(u), F_{j,i}(v)] = s_i (F_{j,i}(u) - F_{j,i}(v)) D_i(u)
            {
                EGrid B = bracket_grid(g.D[i], g.f_ji(j, i), 0, g.epar(i, j));
                EGrid lhs = B.mul_u() - B.mul_v();
                EGrid rhs =
                    (u_only(g.f_ji(j, i) * g.D[i]) - uvu(one, g.f_ji(j, i), g.D[i])) * sgn(i);
                record("rel4", {i, j}, lhs, rhs);
            }
            // part (5): (u-v)[D_j(u), F_{j,i}(v)] = s_j * chains(head j, i_r < j) D_j(u)
            {
                EGrid B = bracket_grid(g.D[j], g.f_ji(j, i), 0, g.epar(i, j));
                EGrid lhs = B.mul_u() - B.mul_v();
                EGrid rhs = chain_sum(i, j - 1, j, g.D[j]) * sgn(j);
                record("rel5", {i, j}, lhs, rhs);
            }
            // parts (6), (7) for k > j
            for (int k = j + 1; k <= mn; ++k) {
                const Rat pref(row_parity_prod(pi, i, j, k) ? -1 : 1);
                ESeries FkjDj = g.f_ji(k, j) * g.D[j];
                {
                    EGrid B = bracket_grid(g.D[j], g.f_ji(k, i), 0, g.epar(i, k));
                    EGrid lhs = (B * pref).mul_u() - (B * pref).mul_v();
                    EGrid rhs = chain_sum(i, j - 1, j, FkjDj);
                    record("rel6", {i, j, k}, lhs, rhs);
                }
                {
                    EGrid B = bracket_grid(FkjDj, g.f_ji(k, i), g.epar(j, k), g.epar(i, k));
                    EGrid lhs = (B * pref).mul_u() - (B * pref).mul_v();
                    EGrid rhs = chain_sum(i, j - 1, k, FkjDj);
                    record("rel7", {i, j, k}, lhs, rhs);
                }
            }
            // part (2): (u-v)[F_{k,j}(u), F_{j,i}(v)] = s_j * chains(head k, i_r <= j)
            for (int k = j + 1; k <= mn; ++k) {
                EGrid B = bracket_grid(g.f_ji(k, j), g.f_ji(j, i), g.epar(j, k), g.epar(i, j));
                EGrid lhs = B.mul_u() - B.mul_v();
                EGrid rhs = chain_sum(i, j, k, one) * sgn(j);
                record("rel2", {i, j, k}, lhs, rhs);
            }
        }
    return rep;
}

}  // namespace wsuper
