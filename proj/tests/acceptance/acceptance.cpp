// Acceptance suite: one pass/fail line per criterion.  All arithmetic is
// exact; every comparison is an identity of normal forms or rationals.

#include <chrono>
#include <cstdio>
#include <functional>

#include "wsuper/suites.hpp"

using namespace wsuper;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                title.c_str(), dt / 1000.0, error.empty() ? "" : " error: ", error.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

int jobs() {
    if (const char* env = std::getenv("WSUPER_JOBS")) return std::max(1, std::atoi(env));
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

int main() {
    const int J = jobs();
    std::vector<Pyramid> corpus6 = small_corpus(6, 3);
    std::printf("corpus: %zu pyramids (boxes <= 6, height <= 3), %d workers\n", corpus6.size(),
                J);

    criterion(1, "presentation relations dr1-dr12, sdr1-sdr2 on the corpus", [&] {
        Report rep = suite_relations(corpus6, J);
        std::printf("          %d relation instances\n", rep.passed() + rep.failed());
        return rep.ok();
    });

    criterion(2, "m-invariance of every window generator", [&] {
        Report rep = suite_invariance(corpus6, J);
        return rep.ok() && rep.records.size() > 0;
    });

    criterion(3, "vanishing window of T-coefficients with nonzero boundary", [&] {
        Report rep = suite_vanishing(corpus6, J);
        return rep.ok();
    });

    criterion(4, "character oracle equals the closed formula (generic + integral)", [&] {
        std::vector<Pyramid> sel;
        for (const Pyramid& pi : corpus6)
            if (pi.height_bound() == 2 && pi.boxes() <= 5) sel.push_back(pi);
        // 5 generic and 5 integral tableaux per pyramid at depths <= 3
        Report rep = suite_character(sel, 3, /*seed=*/1, /*per_pyramid=*/5, J);
        std::printf("          %zu pyramids, %d cross-checks\n", sel.size(),
                    rep.passed() + rep.failed());
        return rep.ok() && !rep.records.empty();
    });

    criterion(5, "rank (1|1) irreducibles have dimension 2^r with independent basis", [&] {
        ParitySeq s11 = ParitySeq::parse("+-");
        for (int r = 0; r <= 3; ++r)
            for (int s12 = 0; s12 <= 2; ++s12)
                for (int s21 = 0; s12 + s21 <= 2; ++s21) {
                    LWeight lam(s11);
                    for (int t = 0; t < r; ++t) lam.mul_y(1, rat(1, 3) + rat(5 * t + s12));
                    Rank1Result res = rank1_irreducible(s12, s21, lam);
                    if (!(res.r == r && res.dim == (1L << r) && res.dim_matches &&
                          res.basis_independent))
                        return false;
                }
        return true;
    });

    criterion(6, "character multiplicativity and the column factorization", [&] {
        struct Case {
            std::vector<int> lq, rq;
            const char* par;
        };
        std::vector<Case> cases = {{{2}, {1}, "+-"}, {{1}, {2}, "-+"}, {{2}, {2}, "+-"}};
        const int d = 2;
        for (auto& cs : cases) {
            Pyramid left = pyramid_from_heights(cs.lq, ParitySeq::parse(cs.par));
            Pyramid right = pyramid_from_heights(cs.rq, ParitySeq::parse(cs.par));
            if (!s_compatible(left, right)) return false;
            Pyramid joint = concat(left, right);
            RowTab tl = generic_tableau(left, 5, d), tr = generic_tableau(right, 9, d);
            std::vector<std::vector<Rat>> rows(joint.height_bound() + 1);
            for (int i = 1; i <= joint.height_bound(); ++i) {
                rows[i] = tl.rows.at(i);
                rows[i].insert(rows[i].end(), tr.rows.at(i).begin(), tr.rows.at(i).end());
            }
            RowTab tj(joint, rows);
            WModule ml(tl, d), mr(tr, d), mj(tj, d);
            GtResult cl = gt_character(ml, d), cr = gt_character(mr, d), cj = gt_character(mj, d);
            if (!cl.ok || !cr.ok || !cj.ok) return false;
            if (!(cj.character == multiply(cl.character, cr.character))) return false;
            // Cor 5.4 on the formula side: column factorization
            Character f = ch_formula(tj, d);
            Character prod = multiply(ch_formula(tl, d), ch_formula(tr, d)).truncated(d);
            if (!(f == prod)) return false;
            if (!(f == cj.character)) return false;
        }
        return true;
    });

    criterion(7, "diagram suite: coassociativity, Miura, column removal, coproduct", [&] {
        std::vector<Pyramid> pis = {
            pyramid_from_heights({1, 1, 1}, ParitySeq::parse("+")),
            pyramid_from_heights({1, 1, 1}, ParitySeq::parse("-")),
            pyramid_from_heights({1, 2, 1}, ParitySeq::parse("+-")),
            pyramid_from_heights({1, 2, 1}, ParitySeq::parse("-+")),
        };
        for (const Pyramid& pi : pis) {
            WGen w(pi);
            Report rep = suite_diagrams(pi, pi.level() / 2, w.default_order(), J);
            if (!rep.ok()) return false;
        }
        return true;
    });

    criterion(8, "center suite: HC of z for gl(2|2) and the HChc diagram", [&] {
        // HC(z_{2|2,s}(u)) = (u+x1)(u+x2)/((u+y1)(u+y2)) for both worked parities
        for (auto par : {"++--", "-+-+"}) {
            ParitySeq s = ParitySeq::parse(par);
            Pyramid col = pyramid_from_heights({4}, s);
            PositionedAlgebra pa = positioned(col);
            const int order = 5;
            Series<EnvElement> Z = z_series(pa, order);
            SymElement model(2, 2);
            Series<SymElement> expect = Series<SymElement>::one(order, model);
            for (int t = 0; t < 2; ++t) {
                Series<SymElement> lin(order, model);
                lin.at(0) = SymElement(2, 2, Rat(1));
                lin.at(1) = SymElement::variable(2, 2, t);
                expect = expect * lin;
            }
            for (int t = 0; t < 2; ++t) {
                Series<SymElement> lin(order, model);
                lin.at(0) = SymElement(2, 2, Rat(1));
                lin.at(1) = SymElement::variable(2, 2, 2 + t);
                expect = expect * lin.inverse();
            }
            for (int r = 0; r <= order; ++r)
                if (!(hc(pa, Z.at(r)) == expect.at(r))) return false;
        }
        // psi-images central and HChc on q=(1,2), r <= 3
        for (auto par : {"+-", "-+"}) {
            Pyramid pi = pyramid_from_heights({1, 2}, ParitySeq::parse(par), 2);
            WGen w(pi);
            Report rep = verify_center_theorem(w, 3);
            if (!rep.ok()) return false;
        }
        return true;
    });

    criterion(9, "column-strict and Drinfeld decisions agree (exhaustive window)", [&] {
        Report rep = suite_findim(corpus6, 4, J);
        long total = 0;
        for (auto& r : rep.records) total += r.indices.empty() ? 0 : r.indices[0];
        std::printf("          %zu standard pyramids, %ld tableaux\n", rep.records.size(), total);
        return rep.ok() && !rep.records.empty();
    });

    criterion(10, "appendix block recursions and column removal to order 5", [&] {
        Report rep = suite_appendix(J, 5);
        return rep.ok() && !rep.records.empty();
    });

    std::printf(failures ? "ACCEPTANCE: %d criterion(s) FAILED\n" : "ACCEPTANCE: all criteria passed\n",
                failures);
    return failures ? 1 : 0;
}
