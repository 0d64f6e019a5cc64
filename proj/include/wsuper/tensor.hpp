#pragma once

// Tensor products of envelope algebras with the Koszul sign rule
// (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd, plus a plain three-fold
// container for coassociativity comparisons.

#include "wsuper/envelope.hpp"
#include "wsuper/series.hpp"

namespace wsuper {

class Tensor2 {
  public:
    Tensor2() = default;
    Tensor2(Ctx a, Ctx b) : ca_(std::move(a)), cb_(std::move(b)) {}

    static Tensor2 of(const EnvElement& x, const EnvElement& y) {
        Tensor2 t(x.ctx(), y.ctx());
        for (auto& [mx, cx] : x.terms())
            for (auto& [my, cy] : y.terms()) t.add_term(mx, my, cx * cy);
        return t;
    }
    static Tensor2 one(const Ctx& a, const Ctx& b) {
        Tensor2 t(a, b);
        t.add_term(Mono{}, Mono{}, Rat(1));
        return t;
    }

    const Ctx& ctxA() const { return ca_; }
    const Ctx& ctxB() const { return cb_; }
    const std::map<std::pair<Mono, Mono>, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Mono& a, const Mono& b, const Rat& c) {
        if (wsuper::is_zero(c)) return;
        auto key = std::make_pair(a, b);
        auto it = terms_.find(key);
        if (it == terms_.end()) terms_.emplace(std::move(key), c);
        else {
            it->second += c;
            if (wsuper::is_zero(it->second)) terms_.erase(it);
        }
    }

    Tensor2& operator+=(const Tensor2& o) {
        merge_ctx(o);
        for (auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    Tensor2& operator-=(const Tensor2& o) {
        merge_ctx(o);
        for (auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    friend Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
    friend Tensor2 operator-(Tensor2 a, const Tensor2& b) { return a -= b; }
    Tensor2& operator*=(const Rat& s) {
        if (wsuper::is_zero(s)) { terms_.clear(); return *this; }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend Tensor2 operator*(Tensor2 a, const Rat& s) { return a *= s; }

    int mono_parity_a(const Mono& m) const {
        int p = 0;
        for (const Letter& l : m) p ^= (ca_->gen_parity(l.g) & (l.e & 1));
        return p;
    }
    int mono_parity_b(const Mono& m) const {
        int p = 0;
        for (const Letter& l : m) p ^= (cb_->gen_parity(l.g) & (l.e & 1));
        return p;
    }

    friend Tensor2 operator*(const Tensor2& x, const Tensor2& y) {
        Ctx a = x.ca_ ? x.ca_ : y.ca_;
        Ctx b = x.cb_ ? x.cb_ : y.cb_;
        Tensor2 out(a, b);
        for (auto& [kx, cx] : x.terms_)
            for (auto& [ky, cy] : y.terms_) {
                // (p (x) q)(r (x) s) = (-1)^{|q||r|} pr (x) qs
                int sign = (x.mono_parity_b(kx.second) & y.mono_parity_a(ky.first)) ? -1 : 1;
                EnvElement p(a), q(b);
                p.add_term(kx.first, Rat(1));
                q.add_term(kx.second, Rat(1));
                EnvElement r(a), s(b);
                r.add_term(ky.first, Rat(1));
                s.add_term(ky.second, Rat(1));
                EnvElement pr = p * r;
                EnvElement qs = q * s;
                Rat coeff = cx * cy * Rat(sign);
                for (auto& [ma, va] : pr.terms())
                    for (auto& [mb, vb] : qs.terms()) out.add_term(ma, mb, coeff * va * vb);
            }
        return out;
    }

    bool operator==(const Tensor2& o) const { return terms_ == o.terms_; }

    // component accessors used by membership tests: coordinates as pairs
    EnvElement left_factor_sum() const {  // sum over terms of a (x) eps(b)
        EnvElement out(ca_);
        for (auto& [k, c] : terms_)
            if (k.second.empty()) out.add_term(k.first, c);
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [k, c] : terms_) {
            EnvElement a(ca_), b(cb_);
            a.add_term(k.first, Rat(1));
            b.add_term(k.second, Rat(1));
            out += (first ? "" : " + ") + to_string(c) + "*(" + a.str() + ") (x) (" + b.str() +
                   ")";
            first = false;
        }
        return out;
    }

  private:
    void merge_ctx(const Tensor2& o) {
        if (!ca_) ca_ = o.ca_;
        if (!cb_) cb_ = o.cb_;
    }
    Ctx ca_, cb_;
    std::map<std::pair<Mono, Mono>, Rat> terms_;
};

template <>
struct RingOps<Tensor2> {
    static Tensor2 zero(const Tensor2& model) { return Tensor2(model.ctxA(), model.ctxB()); }
    static Tensor2 one(const Tensor2& model) { return Tensor2::one(model.ctxA(), model.ctxB()); }
    static bool is_zero(const Tensor2& x) { return x.is_zero(); }
    static bool invert(const Tensor2& x, Tensor2& out) {
        if (x.terms().size() != 1) return false;
        auto& [k, c] = *x.terms().begin();
        if (!k.first.empty() || !k.second.empty()) return false;
        out = Tensor2(x.ctxA(), x.ctxB());
        out.add_term(Mono{}, Mono{}, Rat(1) / c);
        return true;
    }
    static Tensor2 scale(Tensor2 x, const Rat& s) { x *= s; return x; }
};

// Plain container for three-fold tensors; built by splicing, compared exactly.
struct Tensor3 {
    std::map<std::tuple<Mono, Mono, Mono>, Rat> terms;

    void add_term(const Mono& a, const Mono& b, const Mono& c, const Rat& v) {
        if (wsuper::is_zero(v)) return;
        auto key = std::make_tuple(a, b, c);
        auto it = terms.find(key);
        if (it == terms.end()) terms.emplace(std::move(key), v);
        else {
            it->second += v;
            if (wsuper::is_zero(it->second)) terms.erase(it);
        }
    }
    bool operator==(const Tensor3& o) const { return terms == o.terms; }
    bool is_zero() const { return terms.empty(); }
};

}  // namespace wsuper
