#include <catch2/catch_amalgamated.hpp>

#include "wsuper/appendix.hpp"

using namespace wsuper;

TEST_CASE("admissible shapes") {
    Pyramid pi = pyramid_from_heights({3, 1}, ParitySeq::parse("+-+"));
    ShiftMatrix s = shift_matrix_of(pi);
    CHECK(minimal_admissible_shape(s) == std::vector<int>{2, 1});
    CHECK(shape_admissible(s, {2, 1}));
    CHECK(shape_admissible(s, {1, 1, 1}));
    CHECK_FALSE(shape_admissible(s, {1, 2}));
    // rectangle: single block allowed
    Pyramid rect = pyramid_from_heights({2, 2}, ParitySeq::parse("+-"));
    CHECK(minimal_admissible_shape(shift_matrix_of(rect)) == std::vector<int>{2});
}

TEST_CASE("single-block decomposition is trivial") {
    Pyramid rect = pyramid_from_heights({2, 2}, ParitySeq::parse("-+"));
    WGen w(rect);
    BlockGaussData b = make_block_gauss(w, 4, {2});
    SeriesMatrix<EnvElement> T = b.base.t_matrix();
    CHECK(b.fde.D == T);
    CHECK(b.fde.E == SeriesMatrix<EnvElement>::identity(2, 4, EnvElement(b.base.ctx)));
    CHECK(b.fde.F == SeriesMatrix<EnvElement>::identity(2, 4, EnvElement(b.base.ctx)));
}

TEST_CASE("finest shape reduces to scalar data") {
    Pyramid pi = pyramid_from_heights({2, 1}, ParitySeq::parse("+-"));
    WGen w(pi);
    BlockGaussData b = make_block_gauss(w, 4, {1, 1});
    GaussData g = make_gauss(w, 4);
    CHECK(b.fde.D.at(1, 1) == g.D[1]);
    CHECK(b.fde.D.at(2, 2) == g.D[2]);
    CHECK(b.fde.E.at(1, 2) == g.e_ij(1, 2));
    CHECK(b.fde.F.at(2, 1) == g.f_ji(2, 1));
}

TEST_CASE("block root and bar recursions") {
    std::vector<std::pair<std::vector<int>, const char*>> cases = {
        {{3, 1}, "+-+"}, {{3, 1}, "--+"}, {{2, 2, 1}, "-+-"},
    };
    for (auto& [q, par] : cases) {
        Pyramid pi = pyramid_from_heights(q, ParitySeq::parse(par));
        WGen w(pi);
        BlockGaussData b = make_block_gauss(w, 5);
        Report rep = verify_block_root_recursions(b);
        INFO(pi.str());
        for (auto& r : rep.records)
            if (!r.pass) INFO(r.check << " idx " << r.indices.size());
        CHECK(rep.ok());
    }
}

TEST_CASE("column removal recursions") {
    std::vector<std::pair<std::vector<int>, const char*>> cases = {
        {{2, 1}, "+-"}, {{3, 1}, "+-+"}, {{2, 2, 1}, "-+-"}, {{2, 2}, "+-+"},
    };
    for (auto& [q, par] : cases) {
        Pyramid pi = pyramid_from_heights(q, ParitySeq::parse(par));
        WGen w(pi);
        Report rep = verify_column_removal(w, 5);
        INFO(pi.str());
        int shown = 0;
        for (auto& r : rep.records)
            if (!r.pass && shown++ < 5) {
                std::string s = r.check + ":";
                for (int t : r.indices) s += " " + std::to_string(t);
                INFO(s);
            }
        CHECK(rep.ok());
    }
    Pyramid bad = pyramid_from_heights({1, 2}, ParitySeq::parse("+-"), 2);
    WGen wb(bad);
    CHECK_THROWS(verify_column_removal(wb, 4));
}
