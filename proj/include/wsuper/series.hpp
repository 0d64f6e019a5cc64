#pragma once

// Truncated power series in u^{-1} over a (possibly noncommutative) ring R,
// series matrices, quasideterminants and Gauss decomposition.
//
// A Series<R> holds coefficients c_0..c_N of 1*c_0 + c_1 u^{-1} + ... ; all
// arithmetic truncates at the smaller operand order.  R must provide +=, -=,
// *, *=(Rat), ==, and RingOps<R> supplies zero/one/inversion of constants.

#include <optional>
#include <stdexcept>
#include <vector>

#include "wsuper/envelope.hpp"
#include "wsuper/rational.hpp"

namespace wsuper {

template <class R>
struct RingOps;

template <>
struct RingOps<Rat> {
    static Rat zero(const Rat&) { return Rat(0); }
    static Rat one(const Rat&) { return Rat(1); }
    static bool is_zero(const Rat& x) { return sgn(x) == 0; }
    static bool invert(const Rat& x, Rat& out) {
        if (sgn(x) == 0) return false;
        out = Rat(1) / x;
        return true;
    }
    static Rat scale(const Rat& x, const Rat& s) { return x * s; }
};

template <>
struct RingOps<EnvElement> {
    static EnvElement zero(const EnvElement& model) { return EnvElement(model.ctx()); }
    static EnvElement one(const EnvElement& model) {
        return EnvElement(model.ctx(), Rat(1));
    }
    static bool is_zero(const EnvElement& x) { return x.is_zero(); }
    // only scalar elements are invertible here
    static bool invert(const EnvElement& x, EnvElement& out) {
        if (!x.is_scalar() || x.is_zero()) return false;
        out = EnvElement(x.ctx(), Rat(1) / x.scalar_part());
        return true;
    }
    static EnvElement scale(EnvElement x, const Rat& s) { x *= s; return x; }
};

template <class R>
class Series {
  public:
    Series() = default;
    // zero series of the given truncation order, coefficients model `model`
    Series(int order, const R& model) : c_(order + 1, RingOps<R>::zero(model)), model_(model) {}
    static Series constant(int order, const R& value) {
        Series s(order, value);
        s.c_[0] = value;
        return s;
    }
    static Series one(int order, const R& model) {
        return constant(order, RingOps<R>::one(model));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const R& at(int r) const {
        if (r < 0 || r > order()) throw std::out_of_range("series coefficient");
        return c_[r];
    }
    R& at(int r) {
        if (r < 0 || r > order()) throw std::out_of_range("series coefficient");
        return c_[r];
    }
    const R& model() const { return model_; }

    bool is_zero() const {
        for (const R& x : c_)
            if (!RingOps<R>::is_zero(x)) return false;
        return true;
    }

    Series truncated(int new_order) const {
        Series out(std::min(new_order, order()), model_);
        for (int r = 0; r <= out.order(); ++r) out.c_[r] = c_[r];
        return out;
    }

    friend Series operator+(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series out(n, a.model_);
        for (int r = 0; r <= n; ++r) { out.c_[r] = a.c_[r]; out.c_[r] += b.c_[r]; }
        return out;
    }
    friend Series operator-(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series out(n, a.model_);
        for (int r = 0; r <= n; ++r) { out.c_[r] = a.c_[r]; out.c_[r] -= b.c_[r]; }
        return out;
    }
    friend Series operator*(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series out(n, a.model_);
        for (int r = 0; r <= n; ++r)
            for (int s = 0; r + s <= n; ++s) {
                if (RingOps<R>::is_zero(a.c_[r]) || RingOps<R>::is_zero(b.c_[s])) continue;
                out.c_[r + s] += a.c_[r] * b.c_[s];
            }
        return out;
    }
    Series& operator*=(const Rat& s) {
        for (R& x : c_) x = RingOps<R>::scale(x, s);
        return *this;
    }
    friend Series operator*(Series a, const Rat& s) { return a *= s; }
    friend Series operator*(const Rat& s, Series a) { return a *= s; }

    bool operator==(const Series& b) const {
        int n = std::min(order(), b.order());
        for (int r = 0; r <= n; ++r)
            if (!(c_[r] == b.c_[r])) return false;
        return true;
    }

    // Two-sided inverse to the truncation order; requires invertible c_0.
    Series inverse() const {
        R g0 = RingOps<R>::zero(model_);
        if (!RingOps<R>::invert(c_[0], g0))
            throw std::domain_error("series inverse: constant term not invertible");
        Series out(order(), model_);
        out.c_[0] = g0;
        for (int r = 1; r <= order(); ++r) {
            R acc = RingOps<R>::zero(model_);
            for (int t = 1; t <= r; ++t) {
                if (RingOps<R>::is_zero(c_[t])) continue;
                acc += c_[t] * out.c_[r - t];
            }
            out.c_[r] = RingOps<R>::scale(g0 * acc, Rat(-1));
        }
        return out;
    }

    // f(u - a) as a series in u^{-1}: u^{-r} -> sum_t binom(r+t-1, t) a^t u^{-r-t}.
    Series recentered(const Rat& a) const {
        Series out(order(), model_);
        for (int r = 0; r <= order(); ++r) {
            if (RingOps<R>::is_zero(c_[r])) continue;
            if (r == 0) { out.c_[0] += c_[0]; continue; }
            Rat coef(1);  // binom(r-1, 0) a^0
            Rat apow(1);
            for (int t = 0; r + t <= order(); ++t) {
                if (t > 0) {
                    coef *= Rat(r + t - 1);
                    coef /= Rat(t);
                    apow *= a;
                }
                out.c_[r + t] += RingOps<R>::scale(c_[r], coef * apow);
            }
        }
        return out;
    }

    // multiply by u^{-1} (drop overflow) -- used when assembling generating series
    Series shifted_down() const {
        Series out(order(), model_);
        for (int r = 1; r <= order(); ++r) out.c_[r] = c_[r - 1];
        return out;
    }

  private:
    std::vector<R> c_;
    R model_;
};

template <class R>
class SeriesMatrix {
  public:
    SeriesMatrix() = default;
    SeriesMatrix(int rows, int cols, int order, const R& model)
        : rows_(rows), cols_(cols), m_(rows * cols, Series<R>(order, model)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Series<R>& at(int i, int j) { return m_.at((i - 1) * cols_ + (j - 1)); }
    const Series<R>& at(int i, int j) const { return m_.at((i - 1) * cols_ + (j - 1)); }

    static SeriesMatrix identity(int n, int order, const R& model) {
        SeriesMatrix out(n, n, order, model);
        for (int i = 1; i <= n; ++i) out.at(i, i) = Series<R>::one(order, model);
        return out;
    }

    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        int order = std::min(a.m_.empty() ? 0 : a.m_[0].order(),
                             b.m_.empty() ? 0 : b.m_[0].order());
        const R& model = a.m_.at(0).model();
        SeriesMatrix out(a.rows_, b.cols_, order, model);
        for (int i = 1; i <= a.rows_; ++i)
            for (int j = 1; j <= b.cols_; ++j) {
                Series<R> acc(order, model);
                for (int t = 1; t <= a.cols_; ++t) acc = acc + a.at(i, t) * b.at(t, j);
                out.at(i, j) = acc;
            }
        return out;
    }
    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
        SeriesMatrix out = a;
        for (size_t t = 0; t < out.m_.size(); ++t) out.m_[t] = out.m_[t] + b.m_[t];
        return out;
    }
    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
        SeriesMatrix out = a;
        for (size_t t = 0; t < out.m_.size(); ++t) out.m_[t] = out.m_[t] - b.m_[t];
        return out;
    }

    bool operator==(const SeriesMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) return false;
        for (size_t t = 0; t < m_.size(); ++t)
            if (!(m_[t] == b.m_[t])) return false;
        return true;
    }

    SeriesMatrix submatrix(int r0, int c0, int nr, int nc) const {
        const R& model = m_.at(0).model();
        SeriesMatrix out(nr, nc, m_.at(0).order(), model);
        for (int i = 1; i <= nr; ++i)
            for (int j = 1; j <= nc; ++j) out.at(i, j) = at(r0 + i - 1, c0 + j - 1);
        return out;
    }

    // Block inverse by Schur complements; every pivot's constant term must be
    // invertible (identity blocks and scalar-invertible entries both work).
    SeriesMatrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
        const int n = rows_;
        if (n == 1) {
            SeriesMatrix out = *this;
            out.at(1, 1) = at(1, 1).inverse();
            return out;
        }
        // split [[A, b], [c, d]] with d the trailing 1x1 corner
        SeriesMatrix A = submatrix(1, 1, n - 1, n - 1);
        SeriesMatrix b = submatrix(1, n, n - 1, 1);
        SeriesMatrix c = submatrix(n, 1, 1, n - 1);
        SeriesMatrix Ainv = A.inverse();
        Series<R> S = at(n, n) - (c * Ainv * b).at(1, 1);
        Series<R> Sinv = S.inverse();
        SeriesMatrix out(n, n, m_.at(0).order(), m_.at(0).model());
        SeriesMatrix AinvB = Ainv * b;
        SeriesMatrix CAinv = c * Ainv;
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                out.at(i, j) = Ainv.at(i, j) + AinvB.at(i, 1) * Sinv * CAinv.at(1, j);
        for (int i = 1; i < n; ++i) out.at(i, n) = Rat(-1) * (AinvB.at(i, 1) * Sinv);
        for (int j = 1; j < n; ++j) out.at(n, j) = Rat(-1) * (Sinv * CAinv.at(1, j));
        out.at(n, n) = Sinv;
        return out;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Series<R>> m_;
};

// |X|_{k,k} = d - c a^{-1} b for the leading k x k corner (eq:quasi).
template <class R>
Series<R> quasideterminant(const SeriesMatrix<R>& X, int k) {
    if (k < 1 || k > X.rows() || k > X.cols()) throw std::out_of_range("quasideterminant corner");
    if (k == 1) return X.at(1, 1);
    SeriesMatrix<R> a = X.submatrix(1, 1, k - 1, k - 1);
    SeriesMatrix<R> b = X.submatrix(1, k, k - 1, 1);
    SeriesMatrix<R> c = X.submatrix(k, 1, 1, k - 1);
    return X.at(k, k) - (c * a.inverse() * b).at(1, 1);
}

// Gauss decomposition T = F D E with a block partition nu (sizes summing to
// T.rows()); D block diagonal, F/E unitriangular by blocks.  For the all-ones
// partition this is the scalar decomposition of eq:GD.
template <class R>
struct GaussFactors {
    SeriesMatrix<R> F, D, E;  // stored as full matrices
};

template <class R>
GaussFactors<R> gauss_decompose(const SeriesMatrix<R>& T, const std::vector<int>& nu) {
    if (T.rows() != T.cols()) throw std::invalid_argument("gauss_decompose needs square matrix");
    int total = 0;
    for (int x : nu) total += x;
    if (total != T.rows()) throw std::invalid_argument("partition does not match matrix size");
    const int z = static_cast<int>(nu.size());
    std::vector<int> off(z + 1, 0);
    for (int a = 1; a <= z; ++a) off[a] = off[a - 1] + nu[a - 1];
    const int order = T.at(1, 1).order();
    const R model = T.at(1, 1).model();

    SeriesMatrix<R> work = T;
    GaussFactors<R> out{SeriesMatrix<R>::identity(T.rows(), order, model),
                        SeriesMatrix<R>(T.rows(), T.rows(), order, model),
                        SeriesMatrix<R>::identity(T.rows(), order, model)};

    auto block = [&](const SeriesMatrix<R>& M, int a, int b) {
        return M.submatrix(off[a - 1] + 1, off[b - 1] + 1, nu[a - 1], nu[b - 1]);
    };
    auto set_block = [&](SeriesMatrix<R>& M, int a, int b, const SeriesMatrix<R>& V) {
        for (int i = 1; i <= nu[a - 1]; ++i)
            for (int j = 1; j <= nu[b - 1]; ++j) M.at(off[a - 1] + i, off[b - 1] + j) = V.at(i, j);
    };

    for (int kblk = 1; kblk <= z; ++kblk) {
        SeriesMatrix<R> Dk = block(work, kblk, kblk);
        set_block(out.D, kblk, kblk, Dk);
        SeriesMatrix<R> Dkinv = Dk.inverse();
        std::vector<SeriesMatrix<R>> Fcol, Erow;
        for (int i = kblk + 1; i <= z; ++i) {
            SeriesMatrix<R> Fik = block(work, i, kblk) * Dkinv;
            set_block(out.F, i, kblk, Fik);
            Fcol.push_back(Fik);
        }
        for (int j = kblk + 1; j <= z; ++j) {
            SeriesMatrix<R> Ekj = Dkinv * block(work, kblk, j);
            set_block(out.E, kblk, j, Ekj);
            Erow.push_back(Ekj);
        }
        for (int i = kblk + 1; i <= z; ++i)
            for (int j = kblk + 1; j <= z; ++j) {
                SeriesMatrix<R> upd =
                    block(work, i, j) - Fcol[i - kblk - 1] * Dk * Erow[j - kblk - 1];
                set_block(work, i, j, upd);
            }
    }
    return out;
}

template <class R>
GaussFactors<R> gauss_decompose(const SeriesMatrix<R>& T) {
    return gauss_decompose(T, std::vector<int>(T.rows(), 1));
}

// Coefficient grid of a two-variable series sum_{r,s} G^{(r,s)} u^{-r} v^{-s}.
template <class R>
class DoubleSeries {
  public:
    DoubleSeries() = default;
    DoubleSeries(int order, const R& model)
        : n_(order), g_((order + 1) * (order + 1), RingOps<R>::zero(model)), model_(model) {}

    int order() const { return n_; }
    R& at(int r, int s) { return g_.at(r * (n_ + 1) + s); }
    const R& at(int r, int s) const { return g_.at(r * (n_ + 1) + s); }

    // A(u) placed in the u-variable, B(v) in the v-variable: grid A_r * B_s.
    static DoubleSeries outer(const Series<R>& A, const Series<R>& B) {
        int n = std::min(A.order(), B.order());
        DoubleSeries out(n, A.model());
        for (int r = 0; r <= n; ++r)
            for (int s = 0; s <= n; ++s) {
                if (RingOps<R>::is_zero(A.at(r)) || RingOps<R>::is_zero(B.at(s))) continue;
                out.at(r, s) = A.at(r) * B.at(s);
            }
        return out;
    }

    friend DoubleSeries operator+(const DoubleSeries& a, const DoubleSeries& b) {
        DoubleSeries out = a;
        for (size_t t = 0; t < out.g_.size(); ++t) out.g_[t] += b.g_[t];
        return out;
    }
    friend DoubleSeries operator-(const DoubleSeries& a, const DoubleSeries& b) {
        DoubleSeries out = a;
        for (size_t t = 0; t < out.g_.size(); ++t) out.g_[t] -= b.g_[t];
        return out;
    }
    DoubleSeries& operator*=(const Rat& s) {
        for (R& x : g_) x = RingOps<R>::scale(x, s);
        return *this;
    }
    friend DoubleSeries operator*(DoubleSeries a, const Rat& s) { return a *= s; }

    // multiply by u (coefficients shift: result^{(r,s)} = this^{(r+1,s)}),
    // entries at the boundary r = order() are unknown and marked invalid by
    // shrinking the usable window; callers compare on the common window.
    DoubleSeries mul_u() const {
        DoubleSeries out(n_ - 1, model_);
        for (int r = 0; r < n_; ++r)
            for (int s = 0; s < n_; ++s) out.at(r, s) = at(r + 1, s);
        return out;
    }
    DoubleSeries mul_v() const {
        DoubleSeries out(n_ - 1, model_);
        for (int r = 0; r < n_; ++r)
            for (int s = 0; s < n_; ++s) out.at(r, s) = at(r, s + 1);
        return out;
    }
    DoubleSeries shrink(int new_order) const {
        DoubleSeries out(new_order, model_);
        for (int r = 0; r <= new_order; ++r)
            for (int s = 0; s <= new_order; ++s) out.at(r, s) = at(r, s);
        return out;
    }

    bool operator==(const DoubleSeries& b) const {
        int n = std::min(n_, b.n_);
        for (int r = 0; r <= n; ++r)
            for (int s = 0; s <= n; ++s)
                if (!(at(r, s) == b.at(r, s))) return false;
        return true;
    }
    bool is_zero() const {
        for (const R& x : g_)
            if (!RingOps<R>::is_zero(x)) return false;
        return true;
    }

  private:
    int n_ = 0;
    std::vector<R> g_;
    R model_;
};

}  // namespace wsuper
