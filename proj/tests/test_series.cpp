#include <catch2/catch_amalgamated.hpp>

#include "wsuper/series.hpp"

using namespace wsuper;

namespace {
Series<Rat> rseries(std::initializer_list<long> cs, int order) {
    Series<Rat> s(order, Rat(0));
    int r = 0;
    for (long c : cs) s.at(r++) = Rat(c);
    return s;
}
}  // namespace

TEST_CASE("series inverse over the rationals") {
    Series<Rat> one = Series<Rat>::one(6, Rat(0));
    CHECK(one.inverse() == one);

    Series<Rat> f = rseries({1, 5}, 6);  // 1 + 5 u^{-1}
    Series<Rat> g = f.inverse();
    for (int r = 0; r <= 6; ++r) {
        Rat expect = Rat(r % 2 ? -1 : 1);
        for (int t = 0; t < r; ++t) expect *= 5;
        CHECK(g.at(r) == expect);
    }
    CHECK(f * g == one);
    CHECK(g * f == one);

    Series<Rat> zero_const = rseries({0, 1}, 4);
    CHECK_THROWS(zero_const.inverse());
}

TEST_CASE("recentered series") {
    // (1 + a/(u - k)) has coefficients a k^{t-1} at u^{-t}
    Series<Rat> f = rseries({1, 3}, 8);  // a = 3
    Series<Rat> g = f.recentered(Rat(2));
    CHECK(g.at(0) == 1);
    for (int t = 1; t <= 8; ++t) {
        Rat expect(3);
        for (int s = 1; s < t; ++s) expect *= 2;
        CHECK(g.at(t) == expect);
    }
    // recentering is multiplicative
    Series<Rat> h = rseries({1, -2, 7}, 8);
    CHECK((f * h).recentered(Rat(2)) == f.recentered(Rat(2)) * h.recentered(Rat(2)));
    // recentering at 0 is the identity
    CHECK(h.recentered(Rat(0)) == h);
}

TEST_CASE("quasideterminant basics") {
    SeriesMatrix<Rat> X(1, 1, 4, Rat(0));
    X.at(1, 1) = rseries({1, 9}, 4);
    CHECK(quasideterminant(X, 1) == X.at(1, 1));

    SeriesMatrix<Rat> Y(2, 2, 4, Rat(0));
    Y.at(1, 1) = Series<Rat>::constant(4, Rat(2));
    Y.at(1, 2) = Series<Rat>::constant(4, Rat(1));
    Y.at(2, 1) = Series<Rat>::constant(4, Rat(1));
    Y.at(2, 2) = Series<Rat>::constant(4, Rat(1));
    Series<Rat> q = quasideterminant(Y, 2);
    CHECK(q.at(0) == rat(1, 2));
    for (int r = 1; r <= 4; ++r) CHECK(is_zero(q.at(r)));
}

TEST_CASE("gauss decomposition of rational series matrices") {
    const int n = 3, order = 5;
    SeriesMatrix<Rat> T = SeriesMatrix<Rat>::identity(n, order, Rat(0));
    // deterministic pseudo-random unit-diagonal entries
    long seed = 7;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int r = 1; r <= order; ++r) {
                seed = (seed * 1103515245 + 12345) % 97;
                T.at(i, j).at(r) = rat(seed - 48, 7);
            }
    auto fde = gauss_decompose(T);
    SeriesMatrix<Rat> re = fde.F * fde.D * fde.E;
    CHECK(re == T);
    // unitriangularity
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i < j) CHECK(fde.F.at(i, j).is_zero());
            if (i > j) CHECK(fde.E.at(i, j).is_zero());
            if (i != j) CHECK(fde.D.at(i, j).is_zero());
            if (i == j) {
                CHECK(fde.F.at(i, i) == Series<Rat>::one(order, Rat(0)));
                CHECK(fde.E.at(i, i) == Series<Rat>::one(order, Rat(0)));
            }
        }
    // quasideterminant identity D_k = |T_[k]|_{kk}
    for (int k = 1; k <= n; ++k) {
        SeriesMatrix<Rat> corner = T.submatrix(1, 1, k, k);
        CHECK(quasideterminant(corner, k) == fde.D.at(k, k));
    }
    // identity matrix decomposes trivially
    auto idf = gauss_decompose(SeriesMatrix<Rat>::identity(n, order, Rat(0)));
    CHECK(idf.F == SeriesMatrix<Rat>::identity(n, order, Rat(0)));
    CHECK(idf.D == SeriesMatrix<Rat>::identity(n, order, Rat(0)));
    CHECK(idf.E == SeriesMatrix<Rat>::identity(n, order, Rat(0)));
}

TEST_CASE("block gauss decomposition agrees with recomposition") {
    const int n = 3, order = 4;
    SeriesMatrix<Rat> T = SeriesMatrix<Rat>::identity(n, order, Rat(0));
    long seed = 23;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int r = 1; r <= order; ++r) {
                seed = (seed * 48271) % 2147483647;
                T.at(i, j).at(r) = rat(seed % 19 - 9, 5);
            }
    for (auto nu : {std::vector<int>{2, 1}, std::vector<int>{1, 2}, std::vector<int>{3}}) {
        auto fde = gauss_decompose(T, nu);
        CHECK(fde.F * fde.D * fde.E == T);
    }
}

TEST_CASE("noncommutative series arithmetic") {
    Pyramid pi = pyramid_from_heights({2}, ParitySeq::parse("+-"));
    Ctx c = EnvContext::for_pyramid(pi);
    const int order = 5;
    EnvElement model(c);

    // E(u) = 1 + s_i e_{i,j} u^{-1} for gl_{1|1}
    SeriesMatrix<EnvElement> E(2, 2, order, model);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            E.at(i, j) = Series<EnvElement>(order, model);
            if (i == j) E.at(i, j).at(0) = EnvElement::one(c);
            EnvElement g = e_gen(c, i, j);
            g *= Rat(i == 1 ? 1 : -1);  // s_1 = +, s_2 = -
            E.at(i, j).at(1) = g;
        }
    // inverse is two-sided
    Series<EnvElement> d1 = E.at(1, 1);
    Series<EnvElement> d1inv = d1.inverse();
    Series<EnvElement> onec = Series<EnvElement>::one(order, model);
    CHECK(d1 * d1inv == onec);
    CHECK(d1inv * d1 == onec);

    auto fde = gauss_decompose(E);
    CHECK(fde.F * fde.D * fde.E == E);
    // quasideterminant cross-check over a noncommutative ring
    CHECK(quasideterminant(E, 2) == fde.D.at(2, 2));
    // explicit value: D_2(u) = 1 - e22 u^{-1} + e21 (1 + e11 u^{-1})^{-1} e12 u^{-2}
    Series<EnvElement> d2 = fde.D.at(2, 2);
    CHECK(d2.at(0) == EnvElement::one(c));
    CHECK(d2.at(1) == Rat(-1) * e_gen(c, 2, 2));
    CHECK(d2.at(2) == e_gen(c, 2, 1) * e_gen(c, 1, 2));
    CHECK(d2.at(3) == Rat(-1) * (e_gen(c, 2, 1) * e_gen(c, 1, 1) * e_gen(c, 1, 2)));
}

TEST_CASE("double series grids") {
    Series<Rat> A = rseries({1, 2, 3}, 3);
    Series<Rat> B = rseries({0, 1, 0, 5}, 3);
    auto G = DoubleSeries<Rat>::outer(A, B);
    CHECK(G.at(1, 1) == 2);
    CHECK(G.at(2, 3) == 15);
    auto Gu = G.mul_u();
    CHECK(Gu.at(0, 1) == G.at(1, 1));
    auto Gv = G.mul_v();
    CHECK(Gv.at(1, 0) == G.at(1, 1));
    CHECK((G - G).is_zero());
}
