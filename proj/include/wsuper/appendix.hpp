#pragma once

// Block (parabolic) Gauss decomposition of the T-matrix relative to an
// admissible shape, the bar elements, and the identities of the appendix
// lemmas: the higher-root commutator formulas (all auxiliary indices), the
// bar-element recursions, and the column-removal recursions that drive the
// vanishing theorem.

#include "wsuper/gauss.hpp"

namespace wsuper {

// Merge consecutive indices with zero off-diagonal shifts.
inline std::vector<int> minimal_admissible_shape(const ShiftMatrix& s) {
    std::vector<int> nu;
    int run = 1;
    for (int i = 1; i < s.size(); ++i) {
        if (s.at(i, i + 1) == 0 && s.at(i + 1, i) == 0) ++run;
        else { nu.push_back(run); run = 1; }
    }
    nu.push_back(run);
    return nu;
}

inline bool shape_admissible(const ShiftMatrix& s, const std::vector<int>& nu) {
    int off = 0;
    for (int x : nu) {
        for (int i = off + 1; i <= off + x; ++i)
            for (int j = off + 1; j <= off + x; ++j)
                if (s.at(i, j) != 0) return false;
        off += x;
    }
    return off == s.size();
}

struct BlockGaussData {
    GaussData base;                 // scalar data (owns pi/ctx/sigma/order)
    std::vector<int> nu;            // admissible shape
    std::vector<int> off;           // off[a] = nu_1 + ... + nu_a
    GaussFactors<EnvElement> fde;   // block decomposition of the T matrix

    int z() const { return static_cast<int>(nu.size()); }
    int s_nu(int a, int b) const {  // eq:sabnu
        return base.sigma.at(off.at(a), off.at(b));
    }
    int site(int a, int i) const { return off.at(a - 1) + i; }  // global row index
    int row_parity_bit(int a, int i) const {
        return base.pi.parity.at(site(a, i)) == 1 ? 0 : 1;
    }

    const Series<EnvElement>& D(int a, int i, int j) const {
        return fde.D.at(site(a, i), site(a, j));
    }
    const Series<EnvElement>& E(int a, int b, int i, int j) const {
        return fde.E.at(site(a, i), site(b, j));
    }
    const Series<EnvElement>& F(int b, int a, int i, int j) const {
        return fde.F.at(site(b, i), site(a, j));
    }

    // bar elements (eq:barE-def / eq:barF-def); entry (i,j) of block (a,b)
    Series<EnvElement> barE(int a, int b, int i, int j) const {
        Series<EnvElement> out = E(a, b, i, j);
        for (int c = a; c <= b - 1; ++c) {
            const int s = s_nu(c, b);
            for (int g = 1; g <= nu[c - 1]; ++g) {
                Series<EnvElement> term = E(a, c, i, g);
                EnvElement coeff = E(c, b, g, j).at(s + 1);
                Series<EnvElement> scaled(out.order(), EnvElement(base.ctx));
                for (int r = 0; r + s + 1 <= out.order(); ++r)
                    scaled.at(r + s + 1) = term.at(r) * coeff;
                out = out - scaled;
            }
        }
        return out;
    }
    Series<EnvElement> barF(int b, int a, int i, int j) const {
        Series<EnvElement> out = F(b, a, i, j);
        for (int c = a; c <= b - 1; ++c) {
            const int s = s_nu(b, c);
            for (int g = 1; g <= nu[c - 1]; ++g) {
                EnvElement coeff = F(b, c, i, g).at(s + 1);
                Series<EnvElement> term = F(c, a, g, j);
                Series<EnvElement> scaled(out.order(), EnvElement(base.ctx));
                for (int r = 0; r + s + 1 <= out.order(); ++r)
                    scaled.at(r + s + 1) = coeff * term.at(r);
                out = out - scaled;
            }
        }
        return out;
    }
};

inline BlockGaussData make_block_gauss(WGen& w, int order, std::vector<int> nu = {}) {
    BlockGaussData b{make_gauss(w, order), {}, {}, {}};
    if (nu.empty()) nu = minimal_admissible_shape(b.base.sigma);
    if (!shape_admissible(b.base.sigma, nu))
        throw std::invalid_argument("shape not admissible for the shift matrix");
    b.nu = nu;
    b.off.assign(nu.size() + 1, 0);
    for (size_t a = 0; a < nu.size(); ++a) b.off[a + 1] = b.off[a] + nu[a];
    b.fde = gauss_decompose(b.base.t_matrix(), nu);
    return b;
}

namespace detail {
inline EnvElement sbracket(const EnvElement& a, const EnvElement& b, int pa, int pb) {
    EnvElement out = a * b;
    EnvElement ba = b * a;
    if (pa && pb) out += ba; else out -= ba;
    return out;
}
}  // namespace detail

// Lemma: E_{a,b;i,j}^{(r)} = (-1)^{|g|_{b-1}} [E_{a,b-1;i,g}^{(r-s)}, E_{b-1;g,j}^{(s+1)}]
// for every auxiliary g, s = s_{b-1,b}(nu); F mirror with s = s_{b,b-1}(nu).
inline Report verify_block_root_recursions(const BlockGaussData& b) {
    using detail::sbracket;
    Report rep;
    const int z = b.z();
    const int order = b.base.order;
    for (int a = 1; a <= z; ++a)
        for (int bb = a + 2; bb <= z; ++bb) {
            const int se = b.s_nu(bb - 1, bb), sf = b.s_nu(bb, bb - 1);
            for (int i = 1; i <= b.nu[a - 1]; ++i)
                for (int j = 1; j <= b.nu[bb - 1]; ++j)
                    for (int g = 1; g <= b.nu[bb - 2]; ++g) {
                        const int pig = b.row_parity_bit(a, i) ^ b.row_parity_bit(bb - 1, g);
                        const int pgj = b.row_parity_bit(bb - 1, g) ^ b.row_parity_bit(bb, j);
                        const int sgn_g = b.row_parity_bit(bb - 1, g);
                        for (int r = b.s_nu(a, bb) + 1; r <= order; ++r) {
                            EnvElement rhs =
                                sbracket(b.E(a, bb - 1, i, g).at(r - se),
                                         b.E(bb - 1, bb, g, j).at(se + 1), pig, pgj);
                            if (sgn_g) rhs *= Rat(-1);
                            bool ok = b.E(a, bb, i, j).at(r) == rhs;
                            rep.add("appendix", "rootE", {a, bb, i, j, g, r}, ok);
                        }
                        for (int r = b.s_nu(bb, a) + 1; r <= order; ++r) {
                            EnvElement rhs =
                                sbracket(b.F(bb, bb - 1, j, g).at(sf + 1),
                                         b.F(bb - 1, a, g, i).at(r - sf), pgj, pig);
                            if (sgn_g) rhs *= Rat(-1);
                            bool ok = b.F(bb, a, j, i).at(r) == rhs;
                            rep.add("appendix", "rootF", {a, bb, j, i, g, r}, ok);
                        }
                        // bar recursions, one u-step deeper
                        for (int r = b.s_nu(a, bb) + 2; r <= order; ++r) {
                            EnvElement rhs =
                                sbracket(b.E(a, bb - 1, i, g).at(r - se - 1),
                                         b.E(bb - 1, bb, g, j).at(se + 2), pig, pgj);
                            if (sgn_g) rhs *= Rat(-1);
                            bool ok = b.barE(a, bb, i, j).at(r) == rhs;
                            rep.add("appendix", "barE", {a, bb, i, j, g, r}, ok);
                        }
                        for (int r = b.s_nu(bb, a) + 2; r <= order; ++r) {
                            EnvElement rhs =
                                sbracket(b.F(bb, bb - 1, j, g).at(sf + 2),
                                         b.F(bb - 1, a, g, i).at(r - sf - 1), pgj, pig);
                            if (sgn_g) rhs *= Rat(-1);
                            bool ok = b.barF(bb, a, j, i).at(r) == rhs;
                            rep.add("appendix", "barF", {a, bb, j, i, g, r}, ok);
                        }
                    }
        }
    // block recomposition (eq:GD-comp)
    SeriesMatrix<EnvElement> re = b.fde.F * b.fde.D * b.fde.E;
    rep.add("appendix", "recompose", {}, re == b.base.t_matrix());
    return rep;
}

// Column-removal identities: pi must satisfy q_1 >= q_l and k < l.  The
// embedded elements come from the pyramid of the first l-1 columns.
inline Report verify_column_removal(WGen& w, int order) {
    Report rep;
    const Pyramid& pi = w.pyramid();
    const int l = pi.level();
    if (l < 2 || pi.k >= l || pi.q.front() < pi.q.back())
        throw std::invalid_argument("column removal needs q_1 >= q_l and k < l");

    BlockGaussData big = make_block_gauss(w, order);
    const Ctx& ctx = big.base.ctx;
    const int mn = pi.height_bound();
    const int ql = pi.q.back();

    // the small pyramid: first l-1 columns, same parity and cut
    Pyramid small;
    small.q.assign(pi.q.begin(), pi.q.end() - 1);
    small.parity = pi.parity;
    small.k = pi.k;
    small.finalize();
    WGen ws(small);
    BlockGaussData sml = make_block_gauss(ws, order, big.nu);

    // embedding I_{l-1}: boxes of the small pyramid into the big one
    std::function<EnvElement(int, int)> embed = [&](int i2, int j2) {
        int bi = pi.box_at(small.row(i2), small.col(i2));
        int bj = pi.box_at(small.row(j2), small.col(j2));
        return e_gen(ctx, bi, bj);
    };
    auto I = [&](const EnvElement& x) {
        return x.apply_hom<EnvElement>(embed, EnvElement::one(ctx));
    };
    // ordinary commutator against an even letter
    auto comm = [&](const EnvElement& x, const EnvElement& even_letter) {
        return x * even_letter - even_letter * x;
    };

    // flat label of the t-th box in reading order (down columns, left-right)
    std::vector<int> rd = pi.reading_order();
    auto RD = [&](int t) { return rd.at(t - 1); };
    int cum = 0;
    for (int c = 1; c < l; ++c) cum += pi.q[c - 1];  // q_1 + ... + q_{l-1}

    const int z = big.z();
    if (big.nu[z - 1] != ql)
        throw std::logic_error("last block size differs from the last column height");

    // correction terms shared by app5 and app2: given the small-pyramid
    // coefficient x_h at degree r-1 (h = 1..nu_z) and the target j,
    //   sum_h (-1)^{|h|_z} I(x_h) e_{RD(cum+h), RD(cum+j)}
    //   - [ I(x_j), e_{RD(cum+j-ql), RD(cum+j)} ].
    auto correction = [&](const std::function<EnvElement(int)>& small_coeff, int j) {
        EnvElement acc(ctx);
        for (int h = 1; h <= ql; ++h) {
            EnvElement t = I(small_coeff(h)) * tilde_e(ctx, RD(cum + h), RD(cum + j));
            if (big.row_parity_bit(z, h)) t *= Rat(-1);
            acc += t;
        }
        acc -= comm(I(small_coeff(j)), tilde_e(ctx, RD(cum + j - ql), RD(cum + j)));
        return acc;
    };

    // (app5) D-blocks: correction only in the last block
    for (int a = 1; a <= z; ++a)
        for (int i = 1; i <= big.nu[a - 1]; ++i)
            for (int j = 1; j <= big.nu[a - 1]; ++j)
                for (int r = 1; r <= order; ++r) {
                    EnvElement rhs = I(sml.D(a, i, j).at(r));
                    if (a == z)
                        rhs += correction(
                            [&](int h) { return sml.D(z, i, h).at(r - 1); }, j);
                    rep.add("appendix", "app5", {a, i, j, r}, big.D(a, i, j).at(r) == rhs);
                }
    // (app2) E into the last block, via the bar elements
    for (int a = 1; a < z; ++a)
        for (int i = 1; i <= big.nu[a - 1]; ++i)
            for (int j = 1; j <= ql; ++j) {
                Series<EnvElement> bar = sml.barE(a, z, i, j);
                for (int r = big.s_nu(a, z) + 1; r <= order; ++r) {
                    EnvElement rhs = I(bar.at(r));
                    rhs += correction(
                        [&](int h) { return sml.E(a, z, i, h).at(r - 1); }, j);
                    rep.add("appendix", "app2", {a, i, j, r}, big.E(a, z, i, j).at(r) == rhs);
                }
            }
    // (app3) E-blocks left of the last column block
    for (int a = 1; a < z; ++a)
        for (int bb = a + 1; bb < z; ++bb)
            for (int i = 1; i <= big.nu[a - 1]; ++i)
                for (int j = 1; j <= big.nu[bb - 1]; ++j)
                    for (int r = big.s_nu(a, bb) + 1; r <= order; ++r)
                        rep.add("appendix", "app3", {a, bb, i, j, r},
                                big.E(a, bb, i, j).at(r) == I(sml.E(a, bb, i, j).at(r)));
    // (app4) all F-blocks embed untouched
    for (int a = 1; a < z; ++a)
        for (int bb = a + 1; bb <= z; ++bb)
            for (int i = 1; i <= big.nu[bb - 1]; ++i)
                for (int j = 1; j <= big.nu[a - 1]; ++j)
                    for (int r = big.s_nu(bb, a) + 1; r <= order; ++r)
                        rep.add("appendix", "app4", {bb, a, i, j, r},
                                big.F(bb, a, i, j).at(r) == I(sml.F(bb, a, i, j).at(r)));

    // scalar T recursions (the engine of the vanishing theorem)
    std::vector<std::vector<Series<EnvElement>>> Tbig(mn + 1), Tsml(mn + 1);
    for (int i = 1; i <= mn; ++i) {
        Tbig[i].assign(mn + 1, Series<EnvElement>(order, EnvElement(ctx)));
        Tsml[i].assign(mn + 1, Series<EnvElement>(order, EnvElement(ctx)));
        for (int j = 1; j <= mn; ++j) {
            Tbig[i][j] = big.base.t_series(i, j);
            Tsml[i][j] = sml.base.t_series(i, j);
        }
    }
    int cum2 = cum + ql;
    for (int i = 1; i <= mn; ++i)
        for (int j = 1; j <= mn; ++j)
            for (int r = 1; r <= order; ++r) {
                EnvElement rhs = I(Tsml[i][j].at(r));
                if (j > mn - ql) {
                    for (int h = 1; h <= mn - ql; ++h) {
                        int s = big.base.sigma.at(h, j);
                        if (s > r) continue;
                        rhs -= I(Tsml[i][h].at(r - s)) * I(Tsml[h][j].at(s));
                    }
                    for (int h = mn - ql + 1; h <= mn; ++h) {
                        EnvElement t = I(Tsml[i][h].at(r - 1)) *
                                       tilde_e(ctx, RD(cum2 + h - mn), RD(cum2 + j - mn));
                        if (pi.parity.at(h) == -1) t *= Rat(-1);
                        rhs += t;
                    }
                    rhs -= comm(I(Tsml[i][j].at(r - 1)),
                                tilde_e(ctx, RD(cum2 + j - mn - ql), RD(cum2 + j - mn)));
                }
                rep.add("appendix", j > mn - ql ? "colrem2" : "colrem1", {i, j, r},
                        Tbig[i][j].at(r) == rhs);
            }
    return rep;
}

}  // namespace wsuper
