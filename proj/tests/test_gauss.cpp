#include <catch2/catch_amalgamated.hpp>

#include "wsuper/corpus.hpp"
#include "wsuper/gauss.hpp"

using namespace wsuper;

TEST_CASE("T matrix basics and Gauss cross-path") {
    std::vector<Pyramid> pis = {
        pyramid_from_heights({1, 2}, ParitySeq::parse("+-"), 2),
        pyramid_from_heights({2, 2}, ParitySeq::parse("-+")),
        pyramid_from_heights({2, 1}, ParitySeq::parse("--")),
        pyramid_from_heights({3}, ParitySeq::parse("+-+")),
    };
    for (const Pyramid& pi : pis) {
        WGen w(pi);
        const int order = w.default_order();
        GaussData g = make_gauss(w, order);
        const int mn = pi.height_bound();
        SeriesMatrix<EnvElement> T = g.t_matrix();
        INFO(pi.str());
        // T^{(0)} = delta, T^{(r)} = 0 for 0 < r <= s_{i,j}
        for (int i = 1; i <= mn; ++i)
            for (int j = 1; j <= mn; ++j) {
                CHECK(T.at(i, j).at(0) == EnvElement(g.ctx, Rat(i == j ? 1 : 0)));
                for (int r = 1; r <= g.sigma.at(i, j); ++r) CHECK(T.at(i, j).at(r).is_zero());
            }
        // decomposition of T reproduces the inductively built D/E/F
        auto fde = gauss_decompose(T);
        for (int i = 1; i <= mn; ++i) CHECK(fde.D.at(i, i) == g.D[i]);
        for (int i = 1; i <= mn; ++i)
            for (int j = i + 1; j <= mn; ++j) {
                CHECK(fde.E.at(i, j) == g.e_ij(i, j));
                CHECK(fde.F.at(j, i) == g.f_ji(j, i));
            }
        // quasideterminant identity for every corner
        for (int k = 1; k <= mn; ++k)
            CHECK(quasideterminant(T.submatrix(1, 1, k, k), k) == g.D[k]);
        // H-series has constant term 1
        for (int i = 1; i < mn; ++i)
            CHECK(g.h_series(i).at(0) == EnvElement::one(g.ctx));
    }
}

TEST_CASE("higher root elements in a single column") {
    for (auto par : {"+-+", "++-", "---"}) {
        ParitySeq s = ParitySeq::parse(par);
        Pyramid pi = pyramid_from_heights({3}, s);
        WGen w(pi);
        GaussData g = make_gauss(w, 3);
        const Ctx& c = g.ctx;
        // E_{1,3}^{(1)} = s_1 e_{b1,b3} in flat labels
        int b1 = pi.box_at(1, 1), b3 = pi.box_at(3, 1);
        EnvElement want = e_gen(c, b1, b3);
        want *= Rat(s.at(1));
        CHECK(g.e_ij(1, 3).at(1) == want);
        EnvElement wantf = e_gen(c, b3, b1);
        wantf *= Rat(s.at(3));
        CHECK(g.f_ji(3, 1).at(1) == wantf);
    }
}

TEST_CASE("vanishing suite") {
    SECTION("single column: all T^(2) vanish") {
        Pyramid pi = pyramid_from_heights({3}, ParitySeq::parse("+-+"));
        WGen w(pi);
        GaussData g = make_gauss(w, 4);
        Report rep = verify_vanishing(g, 3);
        CHECK(rep.ok());
    }
    SECTION("two-column pyramid") {
        Pyramid pi = pyramid_from_heights({1, 2}, ParitySeq::parse("+-"), 2);
        WGen w(pi);
        GaussData g = make_gauss(w, w.default_order());
        Report rep = verify_vanishing(g, w.default_order());
        CHECK(rep.ok());
        CHECK_THROWS(verify_vanishing(g, 1));  // below the window
    }
    SECTION("rectangle") {
        Pyramid pi = pyramid_from_heights({2, 2}, ParitySeq::parse("-+"));
        WGen w(pi);
        GaussData g = make_gauss(w, w.default_order());
        CHECK(verify_vanishing(g, w.default_order()).ok());
    }
}

TEST_CASE("berezinian examples") {
    SECTION("one even box") {
        Pyramid pi = pyramid_from_heights({1}, ParitySeq::parse("+"));
        WGen w(pi);
        GaussData g = make_gauss(w, 4);
        Series<EnvElement> C = g.berezinian();
        CHECK(C.at(0) == EnvElement::one(g.ctx));
        CHECK(C.at(1) == e_gen(g.ctx, 1, 1));
        for (int r = 2; r <= 4; ++r) CHECK(C.at(r).is_zero());
    }
    SECTION("gl(1|1) column") {
        Pyramid pi = pyramid_from_heights({2}, ParitySeq::parse("+-"));
        CHECK(pi.kappa[1] == 0);
        CHECK(pi.kappa[2] == 0);
        WGen w(pi);
        GaussData g = make_gauss(w, 5);
        CHECK(g.berezinian() == g.D[1] * g.Dp[2]);
    }
    SECTION("coefficients are central") {
        for (auto par : {"+-", "-+"}) {
            Pyramid pi = pyramid_from_heights({1, 2}, ParitySeq::parse(par), 2);
            WGen w(pi);
            GaussData g = make_gauss(w, w.default_order());
            Report rep = verify_central(g.berezinian(), w, "berezinian");
            INFO(pi.str());
            CHECK(rep.ok());
            CHECK(rep.records.size() > 0);
        }
    }
    SECTION("a non-central element fails with witness") {
        Pyramid pi = pyramid_from_heights({2}, ParitySeq::parse("+-"));
        WGen w(pi);
        Series<EnvElement> s(2, EnvElement(w.ctx()));
        s.at(1) = w.t_parab(1, 1, 0, 1);  // D_1^{(1)}
        Report rep = verify_central(s, w, "D1");
        CHECK_FALSE(rep.ok());
        bool witnessed = false;
        for (auto& r : rep.records)
            if (!r.pass && !r.witness.empty()) witnessed = true;
        CHECK(witnessed);
    }
}

TEST_CASE("structural relations on left-justified pyramids") {
    std::vector<Pyramid> pis = {
        pyramid_from_heights({2}, ParitySeq::parse("+-")),
        pyramid_from_heights({2, 1}, ParitySeq::parse("+-")),
        pyramid_from_heights({2, 1}, ParitySeq::parse("--")),
        pyramid_from_heights({2, 2}, ParitySeq::parse("-+")),
        pyramid_from_heights({3}, ParitySeq::parse("+-+")),
        pyramid_from_heights({2, 1, 1}, ParitySeq::parse("-+")),
    };
    for (const Pyramid& pi : pis) {
        WGen w(pi);
        GaussData g = make_gauss(w, w.default_order());
        Report rep = verify_structural_relations(g);
        INFO(pi.str());
        for (auto& r : rep.records)
            if (!r.pass) INFO(r.check << " " << r.indices[0] << "," << r.indices[1]);
        CHECK(rep.ok());
    }
    // right-justified input is rejected
    Pyramid bad = pyramid_from_heights({1, 2}, ParitySeq::parse("+-"), 2);
    WGen wb(bad);
    GaussData gb = make_gauss(wb, 3);
    CHECK_THROWS(verify_structural_relations(gb));
}
