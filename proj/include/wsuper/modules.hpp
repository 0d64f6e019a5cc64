#pragma once

// Depth-truncated highest-weight module engine: column Verma modules glued
// into W(pi)-modules through the Miura transform, exact weight-space
// matrices, the Gelfand-Tsetlin character oracle (joint generalized
// eigenspaces + rational reconstruction), rank-(1|1) irreducibles, and the
// branching vectors.

#include <memory>

#include "wsuper/character.hpp"
#include "wsuper/gauss.hpp"
#include "wsuper/linsolve.hpp"
#include "wsuper/numtheory.hpp"
#include "wsuper/wgen.hpp"

namespace wsuper {

// ---------------------------------------------------------------------------
// Small dense exact linear algebra.

using RMat = std::vector<std::vector<Rat>>;

inline RMat rmat(int rows, int cols) { return RMat(rows, std::vector<Rat>(cols, Rat(0))); }

inline RMat rmul(const RMat& a, const RMat& b) {
    const int n = a.size(), m = b[0].size(), k = b.size();
    RMat out = rmat(n, m);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (wsuper::is_zero(a[i][t])) continue;
            for (int j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

// Characteristic polynomial of a square matrix (Faddeev-LeVerrier),
// coefficients ascending without the leading 1.
inline std::vector<Rat> charpoly(const RMat& m) {
    const int n = m.size();
    std::vector<Rat> c(n, Rat(0));
    RMat acc = rmat(n, n);
    for (int i = 0; i < n; ++i) acc[i][i] = 1;  // N_0 = I
    Rat coef(1);
    std::vector<Rat> cs(n + 1, Rat(0));
    cs[n] = 1;
    RMat N = acc;
    for (int k = 1; k <= n; ++k) {
        N = rmul(m, N);
        Rat tr(0);
        for (int i = 0; i < n; ++i) tr += N[i][i];
        Rat ck = -tr / Rat(k);
        cs[n - k] = ck;
        for (int i = 0; i < n; ++i) N[i][i] += ck;
    }
    (void)coef;
    c.assign(cs.begin(), cs.end() - 1);
    return c;  // p(t) = t^n + c[n-1] t^{n-1} + ... + c[0]
}

// Rows x with x * M = 0 (left kernel).
inline RMat left_kernel(const RMat& m) {
    const int rows = m.size();
    if (rows == 0) return {};
    const int cols = m[0].size();
    // eliminate on the augmented [M | I] acting on rows
    RMat a = m;
    RMat id = rmat(rows, rows);
    for (int i = 0; i < rows; ++i) id[i][i] = 1;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!wsuper::is_zero(a[r][c])) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        std::swap(id[piv], id[rank]);
        Rat inv = Rat(1) / a[rank][c];
        for (int j = 0; j < cols; ++j) a[rank][j] *= inv;
        for (int j = 0; j < rows; ++j) id[rank][j] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || wsuper::is_zero(a[r][c])) continue;
            Rat f = a[r][c];
            for (int j = 0; j < cols; ++j) a[r][j] -= f * a[rank][j];
            for (int j = 0; j < rows; ++j) id[r][j] -= f * id[rank][j];
        }
        ++rank;
    }
    RMat out;
    for (int r = rank; r < rows; ++r) out.push_back(id[r]);
    return out;
}

// ---------------------------------------------------------------------------
// The module engine.

class WModule {
  public:
    using Key = std::vector<Mono>;  // one lowering monomial per slot
    using Vec = std::map<Key, Rat>;

    WModule(const RowTab& tab, int depth) : tab_(tab), pi_(tab.pi), depth_(depth) {
        wg_ = std::make_shared<WGen>(pi_);
        PiTableau rep = tab.representative();
        const int mn = pi_.height_bound();
        box_slot_.assign(pi_.boxes() + 1, {0, 0});
        for (int c = 1; c <= pi_.level(); ++c) {
            Slot s;
            s.colpi = pyramid_from_heights({pi_.q[c - 1]}, pi_.parity);
            std::vector<int> pos(s.colpi.boxes() + 1, 0);
            for (int b = 1; b <= s.colpi.boxes(); ++b) pos[b] = s.colpi.row(b);
            s.ctx = EnvContext::for_normal_order(s.colpi, pos);
            s.hw.assign(s.colpi.boxes() + 1, Rat(0));
            for (int b = 1; b <= s.colpi.boxes(); ++b) {
                const int rr = s.colpi.row(b);
                // eigenvalue of e_{b,b} on the highest vector (eq. eg:1-col,
                // ambient kappa offsets)
                s.hw[b] = Rat(pi_.parity.at(rr)) * (rep.at(rr, c) + pi_.kappa.at(rr));
            }
            for (int b = 1; b <= s.colpi.boxes(); ++b) {
                int big = pi_.box_at(s.colpi.row(b), c);
                box_slot_[big] = {c - 1, b};
            }
            slots_.push_back(std::move(s));
        }
        (void)mn;
        build_basis();
    }

    const Pyramid& pyramid() const { return pi_; }
    const RowTab& tableau() const { return tab_; }
    int depth() const { return depth_; }
    WGen& wgen() { return *wg_; }

    Key highest_key() const { return Key(slots_.size(), Mono{}); }

    // ---- weight bookkeeping -------------------------------------------------
    // weight change of a slot monomial relative to the highest vector, as a
    // vector over rows (epsilon coordinates)
    std::vector<int> key_delta(const Key& k) const {
        std::vector<int> d(pi_.height_bound() + 1, 0);
        for (size_t s = 0; s < k.size(); ++s)
            for (const Letter& l : k[s]) {
                const auto& sp = slots_[s];
                d[sp.colpi.row(sp.ctx->gi(l.g))] += static_cast<int>(l.e);
                d[sp.colpi.row(sp.ctx->gj(l.g))] -= static_cast<int>(l.e);
            }
        return d;
    }
    static long delta_height(const std::vector<int>& d) {
        long acc = 0, ht = 0;
        for (size_t i = 1; i < d.size(); ++i) {
            acc -= d[i];
            if (i + 1 < d.size()) ht += acc;
        }
        return ht;
    }

    const std::map<std::vector<int>, std::vector<Key>>& groups() const { return groups_; }

    // ---- actions ------------------------------------------------------------
    int slot_mono_parity(int s, const Mono& m) const {
        int p = 0;
        for (const Letter& l : m) p ^= (slots_[s].ctx->gen_parity(l.g) & (l.e & 1));
        return p;
    }
    int key_parity(const Key& k) const {
        int p = 0;
        for (size_t s = 0; s < k.size(); ++s) p ^= slot_mono_parity(static_cast<int>(s), k[s]);
        return p;
    }

    // act by one ambient h-letter e_{a,b}^{pow}
    void act_letter(int big_a, int big_b, Vec& v) const {
        auto [sa, la] = box_slot_.at(big_a);
        auto [sb, lb] = box_slot_.at(big_b);
        if (sa != sb) throw std::logic_error("not an h-letter");
        const Slot& sl = slots_[sa];
        const int gp = sl.ctx->gen_parity(sl.ctx->gen(la, lb));
        Vec out;
        for (auto& [key, coeff] : v) {
            int sign = 1;
            if (gp)
                for (int s = 0; s < sa; ++s)
                    if (slot_mono_parity(s, key[s])) sign = -sign;
            // multiply e_{la,lb} * key[sa] in the slot context
            EnvElement mono(sl.ctx);
            mono.add_term(key[sa], Rat(1));
            EnvElement prod = e_gen(sl.ctx, la, lb) * mono;
            for (auto& [m2, c2] : prod.terms()) {
                // evaluate trailing cartan/raising letters on the highest vector
                Mono lower;
                Rat scal = c2;
                bool dead = false;
                for (const Letter& l : m2) {
                    int cls = sl.ctx->cls(l.g);
                    if (cls == 0) { lower.push_back(l); continue; }
                    if (cls == 2) { dead = true; break; }
                    const int site = sl.ctx->gi(l.g);
                    for (std::uint32_t t = 0; t < l.e; ++t) scal *= sl.hw[site];
                }
                if (dead || wsuper::is_zero(scal)) continue;
                Key nk = key;
                nk[sa] = lower;
                Rat add = coeff * scal * Rat(sign);
                auto it = out.find(nk);
                if (it == out.end()) out.emplace(std::move(nk), add);
                else {
                    it->second += add;
                    if (wsuper::is_zero(it->second)) out.erase(it);
                }
            }
        }
        v = std::move(out);
    }

    // act by an element of U(h) in the ambient context
    Vec act(const EnvElement& h, const Vec& v) const {
        Vec out;
        for (auto& [m, c] : h.terms()) {
            Vec cur = v;
            for (auto it = m.rbegin(); it != m.rend(); ++it)
                for (std::uint32_t t = 0; t < it->e && !cur.empty(); ++t)
                    act_letter(h.ctx()->gi(it->g), h.ctx()->gj(it->g), cur);
            for (auto& [k, cv] : cur) {
                Rat add = c * cv;
                auto jt = out.find(k);
                if (jt == out.end()) out.emplace(k, add);
                else {
                    jt->second += add;
                    if (wsuper::is_zero(jt->second)) out.erase(jt);
                }
            }
        }
        return out;
    }

    // mu-images of the generator series coefficients (cached)
    const EnvElement& mu_d(int i, int r) { return mu_cache(1, i, r); }
    const EnvElement& mu_e(int i, int r) { return mu_cache(2, i, r); }
    const EnvElement& mu_f(int i, int r) { return mu_cache(0, i, r); }

    Vec act_d(int i, int r, const Vec& v) { return act(mu_d(i, r), v); }

    // ---- matrices -----------------------------------------------------------
    // matrix of `op` on the weight group `delta` (rows act from the left:
    // op(key_a) = sum_b M[a][b] key_b)
    RMat matrix_on_group(const EnvElement& op, const std::vector<int>& delta) {
        const auto& keys = groups_.at(delta);
        std::map<Key, int> index;
        for (size_t t = 0; t < keys.size(); ++t) index[keys[t]] = static_cast<int>(t);
        RMat out = rmat(keys.size(), keys.size());
        for (size_t a = 0; a < keys.size(); ++a) {
            Vec v{{keys[a], Rat(1)}};
            Vec w = act(op, v);
            for (auto& [k, c] : w) {
                auto it = index.find(k);
                if (it == index.end()) throw std::logic_error("operator escaped weight group");
                out[a][it->second] = c;
            }
        }
        return out;
    }

  private:
    struct Slot {
        Pyramid colpi;
        Ctx ctx;
        std::vector<Rat> hw;
    };

    const EnvElement& mu_cache(int type, int i, int r) {
        auto key = std::make_tuple(type, i, r);
        auto it = mu_.find(key);
        if (it != mu_.end()) return it->second;
        EnvElement v;
        if (type == 1) v = wg_->mu_t_parab(i, i, i - 1, r);
        else if (type == 2) v = wg_->mu_t_parab(i, i + 1, i, r);
        else v = wg_->mu_t_parab(i + 1, i, i, r);
        return mu_.emplace(key, std::move(v)).first->second;
    }

    void build_basis() {
        // lowering monomials per slot with drop height <= depth
        std::vector<std::vector<std::pair<Mono, int>>> slot_monos(slots_.size());
        for (size_t s = 0; s < slots_.size(); ++s) {
            const Slot& sl = slots_[s];
            std::vector<std::pair<Gen, int>> lows;  // (gen, drop height)
            std::vector<Gen> order;
            for (int a = 1; a <= sl.colpi.boxes(); ++a)
                for (int b = 1; b <= sl.colpi.boxes(); ++b)
                    if (sl.colpi.row(a) > sl.colpi.row(b))
                        lows.push_back({sl.ctx->gen(a, b), sl.colpi.row(a) - sl.colpi.row(b)});
            std::sort(lows.begin(), lows.end(), [&](auto& x, auto& y) {
                return sl.ctx->rank(x.first) < sl.ctx->rank(y.first);
            });
            std::function<void(size_t, Mono&, int)> rec = [&](size_t at, Mono& cur, int ht) {
                slot_monos[s].push_back({cur, ht});
                for (size_t t = at; t < lows.size(); ++t) {
                    auto [g, h] = lows[t];
                    const bool odd = sl.ctx->gen_parity(g) == 1;
                    int maxe = odd ? 1 : (depth_ - ht) / h;
                    for (int e = 1; e <= maxe; ++e) {
                        cur.push_back(Letter{g, static_cast<std::uint32_t>(e)});
                        rec(t + 1, cur, ht + e * h);
                        cur.pop_back();
                    }
                }
            };
            Mono cur;
            rec(0, cur, 0);
        }
        // combine across slots with total height <= depth
        Key key(slots_.size(), Mono{});
        std::function<void(size_t, int)> rec2 = [&](size_t s, int ht) {
            if (s == slots_.size()) {
                std::vector<int> d = key_delta(key);
                groups_[d].push_back(key);
                return;
            }
            for (auto& [m, h] : slot_monos[s]) {
                if (ht + h > depth_) continue;
                key[s] = m;
                rec2(s + 1, ht + h);
            }
            key[s] = Mono{};
        };
        rec2(0, 0);
    }

    RowTab tab_;
    Pyramid pi_;
    int depth_;
    std::shared_ptr<WGen> wg_;
    std::vector<Slot> slots_;
    std::vector<std::pair<int, int>> box_slot_;
    std::map<std::vector<int>, std::vector<Key>> groups_;
    std::map<std::tuple<int, int, int>, EnvElement> mu_;
};

inline WModule w_module(const RowTab& tab, int depth) { return WModule(tab, depth); }

inline WModule column_verma(const Pyramid& column, const std::vector<Rat>& entries, int depth) {
    if (column.level() != 1) throw std::invalid_argument("column_verma needs a single column");
    std::vector<std::vector<Rat>> rows(column.height_bound() + 1);
    size_t t = 0;
    for (int i = 1; i <= column.height_bound(); ++i)
        if (column.p_row(i) == 1) rows[i] = {entries.at(t++)};
    if (t != entries.size()) throw std::invalid_argument("entry count mismatch");
    return WModule(RowTab(column, rows), depth);
}

// ---------------------------------------------------------------------------
// Gelfand-Tsetlin character oracle.

struct GtOptions {
    int series_bound = -1;  // default (M+N) + 2 depth
};

// joint generalized eigenspaces of the commuting D-family on one weight group
namespace detail {
struct EigenLeaf {
    RMat basis;  // rows in group coordinates
    std::map<std::pair<int, int>, Rat> eig;
};

inline void eigen_split(const RMat& basis, const std::vector<std::pair<std::pair<int, int>, RMat>>& ops,
                        size_t at, std::map<std::pair<int, int>, Rat>& eig,
                        std::vector<EigenLeaf>& out) {
    if (basis.empty()) return;
    if (at == ops.size()) {
        out.push_back({basis, eig});
        return;
    }
    const auto& [label, M] = ops[at];
    const int k = basis.size();
    // restriction C with basis * M = C * basis: express the rows of basis*M
    // in the row span of basis (coordinates are plain column indices)
    ExactSolver solver;
    for (int a = 0; a < k; ++a) {
        SparseVec v;
        for (size_t j = 0; j < basis[a].size(); ++j)
            if (!wsuper::is_zero(basis[a][j])) v[j] = basis[a][j];
        solver.add(std::move(v), a);
    }
    RMat BM = rmul(basis, M);
    RMat C = rmat(k, k);
    for (int a = 0; a < k; ++a) {
        SparseVec v;
        for (size_t j = 0; j < BM[a].size(); ++j)
            if (!wsuper::is_zero(BM[a][j])) v[j] = BM[a][j];
        auto sol = solver.express(std::move(v));
        if (!sol) throw std::logic_error("subspace not invariant");
        for (auto& [id, c] : *sol) C[a][id] = c;
    }
    auto roots = rational_roots_monic(charpoly(C));
    if (!roots)
        throw std::runtime_error("irrational eigenvalue: rational-input contract violated");
    for (auto& [lambda, mult] : *roots) {
        // generalized eigenspace: left kernel of (C - lambda)^k
        RMat P = rmat(k, k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) P[i][j] = C[i][j];
            P[i][i] -= lambda;
        }
        RMat Pk = P;
        for (int t = 1; t < k; ++t) Pk = rmul(Pk, P);
        RMat K = left_kernel(Pk);
        // lift to group coordinates
        RMat nb = rmul(K, basis);
        eig[label] = lambda;
        eigen_split(nb, ops, at + 1, eig, out);
        eig.erase(label);
    }
}
}  // namespace detail

struct GtResult {
    Character character;
    bool ok = true;
    std::string error;
};

// rational function reconstruction of one coordinate from its truncated
// series (Pade with degrees (num_deg, den_deg)), returned as y-factors
inline bool reconstruct_coordinate(const std::vector<Rat>& S, int num_deg, int den_deg,
                                   const Rat& kappa_i, std::map<Rat, long>& factors) {
    const int N = static_cast<int>(S.size()) - 1;
    if (num_deg + den_deg > N) return false;
    // solve sum_t Q_t S_{j-t} = 0 for j = num_deg+1 .. num_deg+den_deg, Q_0 = 1
    ExactSolver solver;
    // unknowns Q_1..Q_den as coordinates; build equations
    // use dense elimination instead: small systems
    RMat A = rmat(den_deg, den_deg);
    std::vector<Rat> rhs(den_deg, Rat(0));
    for (int e = 0; e < den_deg; ++e) {
        int j = num_deg + 1 + e;
        for (int t = 1; t <= den_deg; ++t)
            if (j - t >= 0 && j - t <= N) A[e][t - 1] = S[j - t];
        rhs[e] = -S[j];
    }
    // gaussian solve A q = rhs (any solution)
    std::vector<Rat> q(den_deg, Rat(0));
    {
        RMat M = A;
        std::vector<Rat> b = rhs;
        std::vector<int> where(den_deg, -1);
        int row = 0;
        for (int col = 0; col < den_deg && row < den_deg; ++col) {
            int piv = -1;
            for (int r = row; r < den_deg; ++r)
                if (!wsuper::is_zero(M[r][col])) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(M[piv], M[row]);
            std::swap(b[piv], b[row]);
            Rat inv = Rat(1) / M[row][col];
            for (int j2 = 0; j2 < den_deg; ++j2) M[row][j2] *= inv;
            b[row] *= inv;
            for (int r = 0; r < den_deg; ++r) {
                if (r == row || wsuper::is_zero(M[r][col])) continue;
                Rat f = M[r][col];
                for (int j2 = 0; j2 < den_deg; ++j2) M[r][j2] -= f * M[row][j2];
                b[r] -= f * b[row];
            }
            where[col] = row;
            ++row;
        }
        for (int col = 0; col < den_deg; ++col)
            if (where[col] >= 0) q[col] = b[where[col]];
    }
    std::vector<Rat> Q(den_deg + 1, Rat(0));
    Q[0] = 1;
    for (int t = 1; t <= den_deg; ++t) Q[t] = q[t - 1];
    std::vector<Rat> P(num_deg + 1, Rat(0));
    for (int j = 0; j <= num_deg; ++j)
        for (int t = 0; t <= std::min(j, den_deg); ++t) P[j] += Q[t] * S[j - t];
    // verify P = S Q to full order
    for (int j = 0; j <= N; ++j) {
        Rat acc(0);
        for (int t = 0; t <= std::min(j, den_deg); ++t) acc += Q[t] * S[j - t];
        Rat pj = (j <= num_deg) ? P[j] : Rat(0);
        if (acc != pj) return false;
    }
    // cancel the common factor (degenerate Pade solutions are (P h, Q h))
    {
        auto trim = [](std::vector<Rat> v) {
            while (v.size() > 1 && wsuper::is_zero(v.back())) v.pop_back();
            return v;
        };
        auto pmod = [&](std::vector<Rat> a, const std::vector<Rat>& b) {
            while (a.size() >= b.size() && !(a.size() == 1 && wsuper::is_zero(a[0]))) {
                Rat f = a.back() / b.back();
                size_t off = a.size() - b.size();
                for (size_t t = 0; t < b.size(); ++t) a[off + t] -= f * b[t];
                a = trim(a);
                if (a.size() < b.size()) break;
            }
            return a;
        };
        std::vector<Rat> a = trim(P), b = trim(Q);
        while (!(b.size() == 1 && wsuper::is_zero(b[0]))) {
            std::vector<Rat> r = pmod(a, b);
            a = b;
            b = r;
        }
        // a = gcd (up to scalar); normalize constant term to 1 if possible
        if (a.size() > 1) {
            if (wsuper::is_zero(a[0])) return false;  // t | gcd cannot happen (P(0)=1)
            Rat inv = Rat(1) / a[0];
            for (Rat& x : a) x *= inv;
            auto pdiv = [&](const std::vector<Rat>& num) {
                std::vector<Rat> n = trim(num), quo(n.size() - a.size() + 1, Rat(0));
                while (n.size() >= a.size() && !(n.size() == 1 && wsuper::is_zero(n[0]))) {
                    Rat f = n.back() / a.back();
                    quo[n.size() - a.size()] = f;
                    size_t off = n.size() - a.size();
                    for (size_t t = 0; t < a.size(); ++t) n[off + t] -= f * a[t];
                    n = trim(n);
                    if (n.size() < a.size()) break;
                }
                return quo;
            };
            P = pdiv(P);
            Q = pdiv(Q);
        }
    }
    // factor P and Q into (1 + beta t) factors: roots of the reversed monic
    auto split_poly = [&](const std::vector<Rat>& poly, int sign) -> bool {
        int deg = static_cast<int>(poly.size()) - 1;
        while (deg > 0 && wsuper::is_zero(poly[deg])) --deg;
        if (deg == 0) return true;  // constant 1
        // reversed: x^deg * poly(1/x) = poly[deg] + ... + poly[0] x^deg, monic after /poly[0]
        std::vector<Rat> mon(deg, Rat(0));
        for (int t = 0; t < deg; ++t) mon[t] = poly[deg - t] / poly[0];
        auto roots = rational_roots_monic(mon);
        if (!roots) return false;
        for (auto& [tau, mult] : *roots) {
            if (wsuper::is_zero(tau)) return false;  // would be a factor of t
            Rat beta = -tau;  // poly = prod (1 + beta t) with beta = -root
            auto it = factors.find(beta - kappa_i);
            long add = static_cast<long>(mult) * sign;
            if (it == factors.end()) factors.emplace(beta - kappa_i, add);
            else {
                it->second += add;
                if (it->second == 0) factors.erase(it);
            }
        }
        return true;
    };
    if (!split_poly(P, +1)) return false;
    if (!split_poly(Q, -1)) return false;
    return true;
}

inline GtResult gt_character(WModule& M, int depth, GtOptions opt = {}) {
    GtResult out;
    const Pyramid& pi = M.pyramid();
    const int mn = pi.height_bound();
    const int nd = opt.series_bound > 0 ? opt.series_bound : pi.boxes() + 2 * depth;
    Character ch;
    ch.depth = depth;
    // highest l-weight for the grading
    {
        LWeight hw(pi.parity);
        bool okhw = true;
        for (int i = 1; i <= mn; ++i) {
            std::vector<Rat> S(nd + 1, Rat(0));
            S[0] = 1;
            WModule::Vec v{{M.highest_key(), Rat(1)}};
            for (int r = 1; r <= nd; ++r) {
                WModule::Vec w = M.act_d(i, r, v);
                S[r] = w.empty() ? Rat(0) : w.begin()->second;
            }
            std::map<Rat, long> fac;
            if (!reconstruct_coordinate(S, pi.p_row(i) + depth, depth, pi.kappa.at(i), fac))
                okhw = false;
            for (auto& [a, e] : fac) hw.mul_y(i, a, e);
        }
        if (!okhw) {
            out.ok = false;
            out.error = "highest weight reconstruction failed";
            return out;
        }
        ch.hw = hw;
    }
    for (auto& [delta, keys] : M.groups()) {
        if (WModule::delta_height(delta) > depth) continue;
        // matrices of the D-family
        std::vector<std::pair<std::pair<int, int>, RMat>> ops;
        for (int i = 1; i <= mn; ++i)
            for (int r = 1; r <= nd; ++r) {
                EnvElement mu = M.mu_d(i, r);
                ops.push_back({{i, r}, M.matrix_on_group(mu, delta)});
            }
        RMat full = rmat(keys.size(), keys.size());
        for (size_t t = 0; t < keys.size(); ++t) full[t][t] = 1;
        std::vector<detail::EigenLeaf> leaves;
        std::map<std::pair<int, int>, Rat> eig;
        try {
            detail::eigen_split(full, ops, 0, eig, leaves);
        } catch (const std::exception& e) {
            out.ok = false;
            out.error = e.what();
            return out;
        }
        long total = 0;
        for (auto& leaf : leaves) {
            total += leaf.basis.size();
            LWeight w(pi.parity);
            bool okw = true;
            for (int i = 1; i <= mn && okw; ++i) {
                std::vector<Rat> S(nd + 1, Rat(0));
                S[0] = 1;
                for (int r = 1; r <= nd; ++r) S[r] = leaf.eig.at({i, r});
                std::map<Rat, long> fac;
                if (!reconstruct_coordinate(S, pi.p_row(i) + depth, depth, pi.kappa.at(i), fac))
                    okw = false;
                for (auto& [a, e] : fac) w.mul_y(i, a, e);
            }
            if (!okw) {
                out.ok = false;
                out.error = "l-weight not expressible in y-monomials within the degree bound";
                return out;
            }
            ch.add(w, leaf.basis.size());
        }
        if (total != static_cast<long>(keys.size())) {
            out.ok = false;
            out.error = "eigenspace dimensions do not add up";
            return out;
        }
    }
    out.character = ch;
    return out;
}

// ---------------------------------------------------------------------------
// Rank (1|1) irreducibles (dimension 2^r with the explicit F-basis).

// helper exposed for rank1 (the ratio-root extraction of the criterion)
inline std::map<Rat, long> detail_ratio_roots_public(const LWeight& w) {
    return detail::ratio_roots(w, 1);
}

struct Rank1Result {
    int r = 0;            // deg P
    int d = 0;            // s_{12} + s_{21}
    long dim = 0;         // computed dimension of L
    bool dim_matches = false;
    bool basis_independent = false;
    bool restriction_iso = false;  // d > 0 and f(0) != 0
    std::map<Rat, long> P, Q;      // normalized witness
};

inline Rank1Result rank1_irreducible(int s12, int s21, const LWeight& lam) {
    if (lam.coords() != 2 || lam.parity.at(1) == lam.parity.at(2))
        throw std::invalid_argument("rank1_irreducible expects a (1|1) l-weight");
    Rank1Result out;
    out.d = s12 + s21;
    // the ratio as a multiset of roots; all rational by construction of LWeight
    std::map<Rat, long> nu = detail_ratio_roots_public(lam);
    std::map<Rat, long> f, g;
    for (auto& [c, e] : nu) {
        if (e > 0) f[c] = e;
        else g[c] = -e;
    }
    long m0 = f.count(Rat(0)) ? f[Rat(0)] : 0;
    long cancel = std::min<long>(m0, out.d);
    out.P = f;
    if (cancel > 0) {
        out.P[Rat(0)] -= cancel;
        if (out.P[Rat(0)] == 0) out.P.erase(Rat(0));
    }
    out.Q = g;
    if (out.d - cancel > 0) out.Q[Rat(0)] += out.d - cancel;
    long r = 0;
    for (auto& [c, e] : out.P) r += e;
    out.r = static_cast<int>(r);
    out.restriction_iso = out.d > 0 && m0 == 0;

    const int level = out.d + out.r;
    if (level == 0) {
        out.dim = 1;
        out.dim_matches = true;
        out.basis_independent = true;
        return out;
    }
    ShiftMatrix sg = ShiftMatrix::from_diagonals({s12}, {s21});
    Pyramid pi = pyramid_from_triple(sg, level, lam.parity);
    // normalized tableau: row 1 from P, row 2 from Q
    std::vector<std::vector<Rat>> rows(3);
    for (auto& [c, e] : out.P)
        for (long t = 0; t < e; ++t) rows[1].push_back(c - pi.kappa.at(1));
    for (auto& [c, e] : out.Q)
        for (long t = 0; t < e; ++t) rows[2].push_back(c - pi.kappa.at(2));
    WModule M(RowTab(pi, rows), out.r + 2);

    // radical per weight drop k: vectors killed by every length-k product of
    // raising operators
    const int elo = sg.at(1, 2), ehi = sg.at(1, 2) + pi.p_row(1);
    std::vector<EnvElement> eops;
    for (int t = elo + 1; t <= ehi; ++t) eops.push_back(M.mu_e(1, t));
    const WModule::Key top = M.highest_key();
    std::map<int, long> quotient_dim;
    std::map<int, RMat> rad_rows;
    std::map<int, std::vector<WModule::Key>> keys_by_k;
    for (auto& [delta, keys] : M.groups()) {
        const long k = WModule::delta_height(delta);
        keys_by_k[static_cast<int>(k)] = keys;
        if (k == 0) { quotient_dim[0] = 1; rad_rows[0] = {}; continue; }
        // columns: ordered tuples of k raising operators
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur(k, 0);
        std::function<void(size_t)> rec = [&](size_t at) {
            if (at == static_cast<size_t>(k)) { tuples.push_back(cur); return; }
            for (size_t t = 0; t < eops.size(); ++t) { cur[at] = t; rec(at + 1); }
        };
        if (!eops.empty()) rec(0);
        RMat A = rmat(keys.size(), std::max<size_t>(tuples.size(), 1));
        for (size_t a = 0; a < keys.size(); ++a)
            for (size_t tix = 0; tix < tuples.size(); ++tix) {
                WModule::Vec v{{keys[a], Rat(1)}};
                for (int step : tuples[tix]) v = M.act(eops[step], v);
                auto it = v.find(top);
                if (it != v.end()) A[a][tix] = it->second;
            }
        RMat rad = left_kernel(A);
        rad_rows[static_cast<int>(k)] = rad;
        quotient_dim[static_cast<int>(k)] = static_cast<long>(keys.size() - rad.size());
    }
    out.dim = 0;
    bool shape_ok = true;
    auto binom = [](int n, int k2) {
        if (k2 < 0 || k2 > n) return 0L;
        long b = 1;
        for (int t = 1; t <= k2; ++t) b = b * (n - t + 1) / t;
        return b;
    };
    for (auto& [k, q] : quotient_dim) {
        out.dim += q;
        if (q != binom(out.r, k)) shape_ok = false;
    }
    out.dim_matches = shape_ok && out.dim == (1L << out.r);

    // explicit basis: F_1^{(i_1)} ... F_1^{(i_k)} v_+ over increasing tuples
    // in (s21, s21 + r]; check independence modulo the radical
    out.basis_independent = true;
    for (int k = 1; k <= out.r; ++k) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int lo) {
            if (static_cast<int>(cur.size()) == k) { tuples.push_back(cur); return; }
            for (int t = lo; t <= s21 + out.r; ++t) {
                cur.push_back(t);
                rec(t + 1);
                cur.pop_back();
            }
        };
        rec(s21 + 1);
        const auto& keys = keys_by_k[k];
        std::map<WModule::Key, int> index;
        for (size_t t = 0; t < keys.size(); ++t) index[keys[t]] = static_cast<int>(t);
        RMat rows2 = rad_rows[k];
        size_t rad_count = rows2.size();
        for (auto& tup : tuples) {
            WModule::Vec v{{top, Rat(1)}};
            for (auto it = tup.rbegin(); it != tup.rend(); ++it) v = M.act(M.mu_f(1, *it), v);
            std::vector<Rat> row(keys.size(), Rat(0));
            for (auto& [key, c] : v) row[index.at(key)] = c;
            rows2.push_back(std::move(row));
        }
        // rank must be rad_count + #tuples
        ExactSolver solver;
        long rank = 0;
        for (size_t t = 0; t < rows2.size(); ++t) {
            SparseVec sv;
            for (size_t j = 0; j < rows2[t].size(); ++j)
                if (!wsuper::is_zero(rows2[t][j])) sv[j] = rows2[t][j];
            if (solver.add(std::move(sv), t)) ++rank;
        }
        if (rank != static_cast<long>(rad_count + tuples.size())) out.basis_independent = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Branching vectors m_c (generic tableaux, left-justified pyramids).

struct BranchingResult {
    std::map<std::vector<int>, WModule::Vec> vectors;  // flat c -> m_c
    Report report;
};

// total order on supertuples: c' < c if |c'| < |c|, or (equal totals and the
// row sums |c'|_i exceed from the right), or row-lexicographically greater.
struct SupertupleOrder {
    int mn;
    std::vector<int> prow;  // p_i per row
    // flatten: entries c_{i,j} ordered by (i, j)
    bool less(const std::vector<int>& a, const std::vector<int>& b) const {
        long ta = 0, tb = 0;
        for (int x : a) ta += x;
        for (int x : b) tb += x;
        if (ta != tb) return ta < tb;
        std::vector<long> ra(mn, 0), rb(mn, 0);
        int at = 0;
        for (int i = 1; i < mn; ++i)
            for (int j = 0; j < prow[i]; ++j, ++at) {
                ra[i] += a[at];
                rb[i] += b[at];
            }
        for (int i = mn - 1; i >= 1; --i)
            if (ra[i] != rb[i]) return ra[i] > rb[i];  // larger right row sums come earlier
        return a > b;  // lexicographically greater comes earlier
    }
};

class Branching {
  public:
    Branching(WModule& M, int order) : M_(M), pi_(M.pyramid()) {
        for (size_t c = 1; c < pi_.q.size(); ++c)
            if (pi_.q[c] > pi_.q[c - 1])
                throw std::invalid_argument("branching needs a left-justified pyramid");
        // genericness within rows
        for (int i = 1; i <= pi_.height_bound(); ++i) {
            auto row = M.tableau().rows.at(i);
            for (size_t a = 0; a < row.size(); ++a)
                for (size_t b = a + 1; b < row.size(); ++b)
                    if (integer_difference(row[a], row[b]))
                        throw std::invalid_argument("non-generic tableau");
        }
        gauss_mu_ = std::make_unique<GaussData>(make_gauss(M.wgen(), order, /*mu_route=*/true));
    }

    // L_i(z) m = sum_r mu(T_{m+n,i}^{(r)}) z^{p_i - r} m
    WModule::Vec apply_L(int i, const Rat& z, const WModule::Vec& v) {
        const int mn = pi_.height_bound();
        WModule::Vec out;
        std::vector<Rat> zpow(pi_.p_row(i) + 1, Rat(1));
        for (int t = 1; t <= pi_.p_row(i); ++t) zpow[t] = zpow[t - 1] * z;
        Series<EnvElement> T = gauss_mu_->t_series(mn, i);
        for (int r = 1; r <= pi_.p_row(i); ++r) {
            WModule::Vec term = M_.act(T.at(r), v);
            for (auto& [k, c] : term) {
                Rat add = c * zpow[pi_.p_row(i) - r];
                auto it = out.find(k);
                if (it == out.end()) out.emplace(k, add);
                else {
                    it->second += add;
                    if (wsuper::is_zero(it->second)) out.erase(it);
                }
            }
        }
        return out;
    }

    // m_c: factors applied leftmost-first in increasing (i, j, k)
    WModule::Vec m_c(const std::vector<int>& cflat) {
        auto it = cache_.find(cflat);
        if (it != cache_.end()) return it->second;
        WModule::Vec v{{M_.highest_key(), Rat(1)}};
        int at = 0;
        const int mn = pi_.height_bound();
        for (int i = 1; i < mn; ++i)
            for (int j = 1; j <= pi_.p_row(i); ++j, ++at) {
                const Rat ahat = M_.tableau().rows.at(i).at(j - 1) + pi_.kappa.at(i);
                for (int k = 1; k <= cflat.at(at); ++k) {
                    Rat z = -ahat + Rat(pi_.parity.at(i)) * Rat(k - 1);
                    v = apply_L(i, z, v);
                }
            }
        cache_.emplace(cflat, v);
        return v;
    }

    // eigenvalue report for m_c: u^{p_i} D_i(u) m_c = prod_j (u + ahat_{i,j} -
    // s_i c_{i,j}) m_c modulo the span of earlier m_{c'}
    Report verify(const std::vector<int>& cflat) {
        Report rep;
        const int mn = pi_.height_bound();
        SupertupleOrder ord{mn, pi_.p};
        // constraint: c_{i,j} <= 1 when the parities differ
        {
            int at = 0;
            for (int i = 1; i < mn; ++i)
                for (int j = 1; j <= pi_.p_row(i); ++j, ++at)
                    if (pi_.parity.at(i) != pi_.parity.at(mn) && cflat[at] > 1)
                        throw std::invalid_argument("not a supertuple: c>1 across parities");
        }
        WModule::Vec mc = m_c(cflat);
        rep.add("branching", "nonzero", cflat, !mc.empty());
        if (mc.empty()) return rep;
        // span of earlier vectors
        long total = 0;
        for (int x : cflat) total += x;
        std::vector<std::vector<int>> earlier;
        std::vector<int> cur(cflat.size(), 0);
        std::function<void(size_t, long)> gen = [&](size_t at, long budget) {
            if (at == cur.size()) {
                if (ord.less(cur, cflat)) earlier.push_back(cur);
                return;
            }
            for (int v = 0; v <= budget; ++v) {
                cur[at] = v;
                gen(at + 1, budget - v);
            }
            cur[at] = 0;
        };
        gen(0, total);
        ExactSolver span;
        std::map<WModule::Key, long> coord;
        auto vec_coords = [&](const WModule::Vec& v) {
            SparseVec sv;
            for (auto& [k, c] : v) {
                auto [jt, inserted] = coord.emplace(k, coord.size());
                sv[jt->second] = c;
            }
            return sv;
        };
        long id = 0;
        for (auto& e : earlier) {
            WModule::Vec v = m_c(e);
            if (!v.empty()) span.add(vec_coords(v), id++);
        }
        for (int i = 1; i < mn; ++i) {
            // expected roots ahat_{i,j} - s_i c_{i,j}
            std::vector<Rat> roots;
            int at = 0;
            for (int i2 = 1; i2 < mn; ++i2)
                for (int j = 1; j <= pi_.p_row(i2); ++j, ++at)
                    if (i2 == i)
                        roots.push_back(M_.tableau().rows.at(i2).at(j - 1) + pi_.kappa.at(i2) -
                                        Rat(pi_.parity.at(i2)) * Rat(cflat[at]));
            // elementary symmetric coefficients
            std::vector<Rat> es(roots.size() + 1, Rat(0));
            es[0] = 1;
            for (const Rat& rt : roots)
                for (size_t t = es.size() - 1; t >= 1; --t) es[t] += rt * es[t - 1];
            for (int s = 1; s <= pi_.p_row(i); ++s) {
                WModule::Vec lhs = M_.act_d(i, s, mc);
                WModule::Vec expect = mc;
                for (auto& [k, c] : expect) c *= es[s];
                WModule::Vec resid = lhs;
                for (auto& [k, c] : expect) {
                    auto jt = resid.find(k);
                    if (jt == resid.end()) resid.emplace(k, -c);
                    else {
                        jt->second -= c;
                        if (wsuper::is_zero(jt->second)) resid.erase(jt);
                    }
                }
                bool ok = resid.empty() || span.express(vec_coords(resid)).has_value();
                std::vector<int> idx = {i, s};
                idx.insert(idx.end(), cflat.begin(), cflat.end());
                rep.add("branching", "eigen", idx, ok);
            }
        }
        return rep;
    }

  private:
    WModule& M_;
    Pyramid pi_;
    std::unique_ptr<GaussData> gauss_mu_;
    std::map<std::vector<int>, WModule::Vec> cache_;
};

}  // namespace wsuper
