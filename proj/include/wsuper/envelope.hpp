#pragma once

// Exact PBW normal-form arithmetic in U(gl_{M|N}) and its parabolic U(p).
//
// Generators e_{i,j} are indexed by flat box labels i,j in {1..M+N} of a
// pyramid (or by positions of an abstract parity sequence).  Monomials are
// kept in a fixed PBW order; two elements are equal iff their term maps are
// identical.  The generator order is chosen so that
//   * m-letters (col(i) > col(j)) sit rightmost: pr_chi is a per-monomial
//     substitution of the trailing letters;
//   * n-letters (col(i) < col(j)) sit right of the h-letters: the projection
//     U(p) ->> U(h) kills exactly the monomials containing an n-letter.
// Contexts built from a normal order (Harish-Chandra use) instead sort
// lowering letters leftmost and raising letters rightmost.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wsuper/combinat.hpp"
#include "wsuper/rational.hpp"

namespace wsuper {

using Gen = std::uint32_t;  // (i-1)*K + (j-1)

// One letter of a PBW monomial: generator id and exponent.
struct Letter {
    Gen g;
    std::uint32_t e;
    bool operator==(const Letter& o) const { return g == o.g && e == o.e; }
    auto operator<=>(const Letter& o) const = default;
};

using Mono = std::vector<Letter>;  // sorted by PBW rank, odd letters have e == 1

struct MonoGenHash {
    size_t operator()(const std::pair<Mono, Gen>& k) const {
        size_t h = 1469598103934665603ull ^ k.second;
        for (const Letter& l : k.first) {
            h = (h ^ l.g) * 1099511628211ull;
            h = (h ^ l.e) * 1099511628211ull;
        }
        return h;
    }
};

class EnvElement;

class EnvContext : public std::enable_shared_from_this<EnvContext> {
  public:
    enum class Kind { PyramidOrder, NormalOrder };

    // U(g) of a pyramid: parities/rows/cols from the boxes.
    static std::shared_ptr<const EnvContext> for_pyramid(const Pyramid& pi) {
        auto c = std::shared_ptr<EnvContext>(new EnvContext());
        c->kind_ = Kind::PyramidOrder;
        c->pyr_ = pi;
        c->K_ = pi.boxes();
        c->pa_.assign(c->K_ + 1, 0);
        for (int b = 1; b <= c->K_; ++b) c->pa_[b] = pi.pa(b);
        c->build_ranks();
        return c;
    }

    // U(gl_{M|N}) with letters classed by a normal order (positions given by
    // `pos`, pos[i] = place of site i in the normal order; sites 1..K).
    // Used by the Harish-Chandra machinery; rows/cols come from `pi` when the
    // sites are pyramid boxes (cls is still taken from the normal order).
    static std::shared_ptr<const EnvContext> for_normal_order(const Pyramid& pi,
                                                              std::vector<int> pos) {
        auto c = std::shared_ptr<EnvContext>(new EnvContext());
        c->kind_ = Kind::NormalOrder;
        c->pyr_ = pi;
        c->K_ = pi.boxes();
        if (static_cast<int>(pos.size()) != c->K_ + 1)
            throw std::invalid_argument("pos must have K+1 entries (index 0 unused)");
        c->pa_.assign(c->K_ + 1, 0);
        for (int b = 1; b <= c->K_; ++b) c->pa_[b] = pi.pa(b);
        c->pos_ = std::move(pos);
        c->build_ranks();
        return c;
    }

    int K() const { return K_; }
    Kind kind() const { return kind_; }
    const Pyramid& pyramid() const { return pyr_; }

    Gen gen(int i, int j) const {
        if (i < 1 || i > K_ || j < 1 || j > K_) throw std::out_of_range("generator index");
        return static_cast<Gen>((i - 1) * K_ + (j - 1));
    }
    int gi(Gen g) const { return static_cast<int>(g) / K_ + 1; }
    int gj(Gen g) const { return static_cast<int>(g) % K_ + 1; }
    int gen_parity(Gen g) const { return pa_[gi(g)] ^ pa_[gj(g)]; }
    int site_parity(int i) const { return pa_.at(i); }

    // 0: h / lowering (leftmost), 1: n / cartan, 2: m / raising (rightmost)
    int cls(Gen g) const { return cls_[g]; }
    std::uint64_t rank(Gen g) const { return rank_[g]; }

    int kazhdan_deg(Gen g) const {
        const Pyramid& p = pyr_;
        return p.col(gj(g)) - p.col(gi(g)) + 1;
    }

    // chi(e_{i,j}) of the pyramid character (eq:chidef; the rho shift does not
    // enter for off-diagonal m-letters).
    Rat chi(Gen g) const {
        const Pyramid& p = pyr_;
        int i = gi(g), j = gj(g);
        if (p.row(i) == p.row(j) && p.col(i) == p.col(j) + 1)
            return Rat(p.pa(i) == 0 ? 1 : -1);
        return Rat(0);
    }

    bool same_sites(const EnvContext& o) const { return K_ == o.K_ && pa_ == o.pa_; }

    // straightening memo, see EnvElement::insert_gen
    mutable std::mutex memo_mutex;
    mutable std::unordered_map<std::pair<Mono, Gen>, std::map<Mono, Rat>, MonoGenHash> memo;

  private:
    EnvContext() = default;
    void build_ranks() {
        cls_.assign(static_cast<size_t>(K_) * K_, 0);
        rank_.assign(static_cast<size_t>(K_) * K_, 0);
        for (int i = 1; i <= K_; ++i)
            for (int j = 1; j <= K_; ++j) {
                Gen g = static_cast<Gen>((i - 1) * K_ + (j - 1));
                int c;
                if (kind_ == Kind::PyramidOrder) {
                    int ci = pyr_.col(i), cj = pyr_.col(j);
                    c = (ci == cj) ? 0 : (ci < cj ? 1 : 2);
                } else {
                    c = (i == j) ? 1 : (pos_[i] > pos_[j] ? 0 : 2);
                }
                cls_[g] = c;
                rank_[g] = static_cast<std::uint64_t>(c) * K_ * K_ + g;
            }
    }

    Kind kind_ = Kind::PyramidOrder;
    Pyramid pyr_;
    int K_ = 0;
    std::vector<int> pa_;
    std::vector<int> pos_;
    std::vector<int> cls_;
    std::vector<std::uint64_t> rank_;
};

using Ctx = std::shared_ptr<const EnvContext>;

class EnvElement {
  public:
    EnvElement() = default;
    explicit EnvElement(Ctx ctx) : ctx_(std::move(ctx)) {}
    EnvElement(Ctx ctx, const Rat& scalar) : ctx_(std::move(ctx)) {
        if (!wsuper::is_zero(scalar)) terms_[Mono{}] = scalar;
    }

    static EnvElement generator(const Ctx& ctx, int i, int j) {
        EnvElement x(ctx);
        x.terms_[Mono{Letter{ctx->gen(i, j), 1}}] = Rat(1);
        return x;
    }
    static EnvElement one(const Ctx& ctx) { return EnvElement(ctx, Rat(1)); }

    const Ctx& ctx() const { return ctx_; }
    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_scalar() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rat scalar_part() const {
        auto it = terms_.find(Mono{});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    int mono_parity(const Mono& m) const {
        int p = 0;
        for (const Letter& l : m) p ^= (ctx_->gen_parity(l.g) & (l.e & 1));
        return p;
    }
    // -1 if not homogeneous, else 0/1 (zero counts as even).
    int parity() const {
        int p = -2;
        for (auto& [m, c] : terms_) {
            int q = mono_parity(m);
            if (p == -2) p = q;
            else if (p != q) return -1;
        }
        return p == -2 ? 0 : p;
    }
    EnvElement parity_part(int want) const {
        EnvElement out(ctx_);
        for (auto& [m, c] : terms_)
            if (mono_parity(m) == want) out.terms_[m] = c;
        return out;
    }

    EnvElement& operator+=(const EnvElement& o) {
        merge_ctx(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    EnvElement& operator-=(const EnvElement& o) {
        merge_ctx(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend EnvElement operator+(EnvElement a, const EnvElement& b) { return a += b; }
    friend EnvElement operator-(EnvElement a, const EnvElement& b) { return a -= b; }
    friend EnvElement operator-(const EnvElement& a) {
        EnvElement o(a.ctx_);
        for (auto& [m, c] : a.terms_) o.terms_[m] = -c;
        return o;
    }
    EnvElement& operator*=(const Rat& s) {
        if (wsuper::is_zero(s)) { terms_.clear(); return *this; }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend EnvElement operator*(EnvElement a, const Rat& s) { return a *= s; }
    friend EnvElement operator*(const Rat& s, EnvElement a) { return a *= s; }

    friend EnvElement operator*(const EnvElement& a, const EnvElement& b) {
        Ctx ctx = a.ctx_ ? a.ctx_ : b.ctx_;
        EnvElement out(ctx);
        if (!a.ctx_ || !b.ctx_) {  // at least one bare scalar
            const EnvElement& sc = !a.ctx_ ? a : b;
            const EnvElement& other = !a.ctx_ ? b : a;
            Rat s = sc.scalar_part();
            out = other;
            out *= s;
            return out;
        }
        for (auto& [mb, cb] : b.terms_) {
            EnvElement acc(ctx);
            // start from a, then right-multiply by the letters of mb
            acc = a;
            for (const Letter& l : mb)
                for (std::uint32_t t = 0; t < l.e && !acc.is_zero(); ++t)
                    acc = acc.right_mul_gen(l.g);
            acc *= cb;
            out += acc;
        }
        return out;
    }

    bool operator==(const EnvElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const EnvElement& o) const { return terms_ != o.terms_; }

    // Supercommutator [a, b] = ab - (-1)^{|a||b|} ba on homogeneous parts.
    friend EnvElement super_bracket(const EnvElement& a, const EnvElement& b) {
        Ctx ctx = a.ctx_ ? a.ctx_ : b.ctx_;
        EnvElement out(ctx);
        for (int pa : {0, 1})
            for (int pb : {0, 1}) {
                EnvElement xa = a.parity_part(pa), xb = b.parity_part(pb);
                if (xa.is_zero() || xb.is_zero()) continue;
                EnvElement t = xa * xb;
                EnvElement u = xb * xa;
                if (pa && pb) t += u; else t -= u;
                out += t;
            }
        return out;
    }

    // Kazhdan filtration degree; INT32_MIN for 0.
    int kazhdan_degree() const {
        if (terms_.empty()) return INT32_MIN;
        int best = INT32_MIN;
        for (auto& [m, c] : terms_) {
            int d = 0;
            for (const Letter& l : m) d += ctx_->kazhdan_deg(l.g) * static_cast<int>(l.e);
            best = std::max(best, d);
        }
        return best;
    }

    bool in_parabolic() const {
        for (auto& [m, c] : terms_)
            for (const Letter& l : m)
                if (ctx_->cls(l.g) == 2) return false;
        return true;
    }

    // Projection U(g) = I_chi (+) U(p) -> U(p): substitute the trailing
    // m-letters of each monomial by their chi-values.
    EnvElement pr_chi() const {
        EnvElement out(ctx_);
        for (auto& [m, c] : terms_) {
            Rat coeff = c;
            Mono head;
            bool dead = false;
            for (const Letter& l : m) {
                if (ctx_->cls(l.g) != 2) { head.push_back(l); continue; }
                Rat v = ctx_->chi(l.g);
                if (wsuper::is_zero(v)) { dead = true; break; }
                for (std::uint32_t t = 0; t < l.e; ++t) coeff *= v;
            }
            if (!dead) out.add_term(head, coeff);
        }
        return out;
    }

    // Apply a generator substitution that is an algebra homomorphism; A needs
    // +=, *= like EnvElement.  `image(i, j)` returns the image of e_{i,j}.
    template <class A>
    A apply_hom(const std::function<A(int, int)>& image, const A& unit) const {
        A sum = unit;
        sum *= Rat(0);
        for (auto& [m, c] : terms_) {
            A prod = unit;
            for (const Letter& l : m) {
                A g = image(ctx_->gi(l.g), ctx_->gj(l.g));
                for (std::uint32_t t = 0; t < l.e; ++t) prod = prod * g;
            }
            prod *= c;
            sum += prod;
        }
        return sum;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms_) {
            os << (first ? "" : " + ") << to_string(c);
            for (const Letter& l : m) {
                os << " * e[" << ctx_->gi(l.g) << "," << ctx_->gj(l.g) << "]";
                if (l.e > 1) os << "^" << l.e;
            }
            first = false;
        }
        return os.str();
    }

    void add_term(const Mono& m, const Rat& c) {
        if (wsuper::is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.emplace(m, c);
        else {
            it->second += c;
            if (wsuper::is_zero(it->second)) terms_.erase(it);
        }
    }

    EnvElement right_mul_gen(Gen g) const {
        EnvElement out(ctx_);
        for (auto& [m, c] : terms_) {
            const std::map<Mono, Rat>& nf = insert_gen(m, g);
            for (auto& [m2, c2] : nf) out.add_term(m2, c * c2);
        }
        return out;
    }

  private:
    void merge_ctx(const EnvElement& o) {
        if (!ctx_) ctx_ = o.ctx_;
    }

    // Normal form of (normal monomial m) * e_g, memoized in the context.
    const std::map<Mono, Rat>& insert_gen(const Mono& m, Gen g) const {
        const EnvContext& C = *ctx_;
        {
            std::lock_guard<std::mutex> lk(C.memo_mutex);
            auto it = C.memo.find({m, g});
            if (it != C.memo.end()) return it->second;
        }
        std::map<Mono, Rat> result;
        if (m.empty() || C.rank(m.back().g) < C.rank(g)) {
            Mono m2 = m;
            m2.push_back(Letter{g, 1});
            result.emplace(std::move(m2), Rat(1));
        } else if (m.back().g == g) {
            if (C.gen_parity(g) == 1) {
                // odd letters square to zero in U(gl_{M|N}) (i != j)
            } else {
                Mono m2 = m;
                m2.back().e += 1;
                result.emplace(std::move(m2), Rat(1));
            }
        } else {
            // m = m' x^e with rank(x) > rank(g):  m*g = s(x,g) (m' x^{e-1} g) x
            //                                      + (m' x^{e-1}) [x, g]
            const Letter last = m.back();
            Mono m1 = m;
            if (m1.back().e > 1) m1.back().e -= 1; else m1.pop_back();
            const int sign = (C.gen_parity(last.g) & C.gen_parity(g)) ? -1 : 1;

            EnvElement A(ctx_);
            {
                const std::map<Mono, Rat>& nf = insert_gen(m1, g);
                for (auto& [mm, cc] : nf) A.add_term(mm, cc);
            }
            EnvElement withX = A.right_mul_gen(last.g);
            if (sign < 0) withX *= Rat(-1);

            // [e_{i,j}, e_{h,k}] = d_{h,j} e_{i,k} - (-1)^{..} d_{i,k} e_{h,j}
            const int i = C.gi(last.g), j = C.gj(last.g);
            const int h = C.gi(g), k = C.gj(g);
            EnvElement br(ctx_);
            if (h == j) br.add_term(Mono{Letter{C.gen(i, k), 1}}, Rat(1));
            if (i == k) {
                int s2 = (C.gen_parity(last.g) & C.gen_parity(g)) ? -1 : 1;
                br.add_term(Mono{Letter{C.gen(h, j), 1}}, Rat(-s2));
            }
            EnvElement brTerm(ctx_);
            if (!br.is_zero()) {
                EnvElement m1el(ctx_);
                m1el.add_term(m1, Rat(1));
                brTerm = m1el * br;
            }
            EnvElement total = withX + brTerm;
            result = total.terms_;
        }
        std::lock_guard<std::mutex> lk(C.memo_mutex);
        auto [it, ok] = C.memo.emplace(std::make_pair(m, g), std::move(result));
        return it->second;
    }

    Ctx ctx_;
    std::map<Mono, Rat> terms_;
};

// e_{i,j} by flat labels.
inline EnvElement e_gen(const Ctx& ctx, int i, int j) { return EnvElement::generator(ctx, i, j); }

// tilde e_{i,j} = e_{i,j} + d_{i,j} (-1)^{pa(i)} rho_{col(i)}   (eq:etilde)
inline EnvElement tilde_e(const Ctx& ctx, int i, int j) {
    EnvElement x = EnvElement::generator(ctx, i, j);
    if (i == j) {
        const Pyramid& p = ctx->pyramid();
        int sgn = p.pa(i) == 0 ? 1 : -1;
        x += EnvElement(ctx, Rat(sgn * p.rho.at(p.col(i))));
    }
    return x;
}

// m-invariance of y in U(p) under the chi-twisted action (def:Walg); returns
// the offending m-generator and residue on failure.
struct MInvarianceResult {
    bool invariant = true;
    int bad_i = 0, bad_j = 0;
    EnvElement residue;
};

inline MInvarianceResult is_m_invariant(const EnvElement& y) {
    const Ctx& ctx = y.ctx();
    if (!y.in_parabolic()) throw std::invalid_argument("element not in U(p)");
    MInvarianceResult r;
    const Pyramid& p = ctx->pyramid();
    for (int i = 1; i <= ctx->K(); ++i)
        for (int j = 1; j <= ctx->K(); ++j) {
            if (p.col(i) <= p.col(j)) continue;  // not an m-letter
            EnvElement a = EnvElement::generator(ctx, i, j);
            EnvElement res = super_bracket(a, y).pr_chi();
            if (!res.is_zero()) {
                r.invariant = false;
                r.bad_i = i; r.bad_j = j;
                r.residue = res;
                return r;
            }
        }
    return r;
}

// Evaluation map images for a single-column pyramid (eq:evahom): the series
// T_{i,j}(u) = delta_{ij} + s_i e_{i,j} u^{-1} in row positions i, j.
inline EnvElement evaluation_coeff(const Ctx& ctx, int i, int j, int r) {
    const Pyramid& p = ctx->pyramid();
    if (p.level() != 1) throw std::invalid_argument("evaluation needs a single column");
    if (r == 0) return EnvElement(ctx, Rat(i == j ? 1 : 0));
    if (r >= 2) return EnvElement(ctx);
    // positions count nonempty rows top to bottom
    const int mn = p.height_bound();
    std::vector<int> rows;
    for (int rr = 1; rr <= mn; ++rr)
        if (p.box_at(rr, 1)) rows.push_back(rr);
    if (i < 1 || i > static_cast<int>(rows.size()) || j < 1 || j > static_cast<int>(rows.size()))
        throw std::out_of_range("position out of range");
    const int bi = p.box_at(rows[i - 1], 1);
    const int bj = p.box_at(rows[j - 1], 1);
    EnvElement x = EnvElement::generator(ctx, bi, bj);
    x *= Rat(p.parity.at(rows[i - 1]));
    return x;
}

// Re-express x in another context over the same sites (different PBW order).
inline EnvElement convert(const EnvElement& x, const Ctx& target) {
    if (!x.ctx()) return EnvElement(target, x.scalar_part());
    if (!x.ctx()->same_sites(*target))
        throw std::invalid_argument("context conversion requires identical sites");
    EnvElement out(target);
    for (auto& [m, c] : x.terms()) {
        EnvElement prod = EnvElement::one(target);
        for (const Letter& l : m) {
            Gen g = target->gen(x.ctx()->gi(l.g), x.ctx()->gj(l.g));
            for (std::uint32_t t = 0; t < l.e; ++t) prod = prod.right_mul_gen(g);
        }
        prod *= c;
        out += prod;
    }
    return out;
}

}  // namespace wsuper
