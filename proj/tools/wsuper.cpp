// Command-line front door: pyramid inspection, Gauss data dumps, the
// verification suites, characters of Verma modules, the finite-dimensionality
// check and the center suite.  All structured output is JSON; exit status is
// 0 on success, 1 when a check fails, 2 on usage or configuration errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "wsuper/json_io.hpp"
#include "wsuper/suites.hpp"

using namespace wsuper;

namespace {

struct RunConfig {
    std::string pyramid_file;
    std::string tableau_file;
    int order = -1;
    int depth = 2;
    int jobs = 1;
    unsigned seed = 1;
    std::string out;
    bool strict = false;
    int split = -1;
};

void write_out(const RunConfig& cfg, const Json& j) {
    if (cfg.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(cfg.out);
        f << j.dump(2) << "\n";
    }
}

Json config_echo(const RunConfig& cfg, const std::string& command) {
    Json j;
    j["command"] = command;
    if (!cfg.pyramid_file.empty()) j["pyramid"] = cfg.pyramid_file;
    if (!cfg.tableau_file.empty()) j["tableau"] = cfg.tableau_file;
    j["order"] = cfg.order;
    j["depth"] = cfg.depth;
    j["jobs"] = cfg.jobs;
    j["seed"] = cfg.seed;
    j["strict"] = cfg.strict;
    return j;
}

int emit_report(const RunConfig& cfg, const std::string& command, const Report& rep) {
    Json j = report_to_json(rep);
    j["config"] = config_echo(cfg, command);
    write_out(cfg, j);
    return rep.ok() ? 0 : 1;
}

// suites declare a minimal truncation order; auto-raise unless --strict
int effective_order(const RunConfig& cfg, int minimal, const char* what) {
    if (cfg.order < 0) return minimal;
    if (cfg.order < minimal) {
        if (cfg.strict)
            throw CLI::ValidationError(std::string(what) + ": --order " +
                                       std::to_string(cfg.order) +
                                       " is below the minimal sufficient order " +
                                       std::to_string(minimal));
        std::cerr << "note: raising --order to the minimal sufficient value " << minimal
                  << " for " << what << "\n";
        return minimal;
    }
    return cfg.order;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in finite W-superalgebras of type A"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("WSUPER_JOBS")) cfg.jobs = std::max(1, std::atoi(env));
    app.add_option("--jobs", cfg.jobs, "parallel workers")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for sampled tableaux")->capture_default_str();
    app.add_option("--out", cfg.out, "write JSON output to a file");
    app.add_flag("--strict", cfg.strict, "refuse to auto-raise the truncation order");

    // pyramid info
    auto* pyramid_cmd = app.add_subcommand("pyramid", "pyramid utilities");
    auto* info = pyramid_cmd->add_subcommand("info", "derived combinatorics of a pyramid");
    info->add_option("--pyramid", cfg.pyramid_file, "pyramid spec file")->required();

    // dump gauss
    auto* dump = app.add_subcommand("dump", "dump internal data");
    auto* dump_gauss = dump->add_subcommand("gauss", "D/E/F/T series coefficients");
    dump_gauss->add_option("--pyramid", cfg.pyramid_file)->required();
    dump_gauss->add_option("--order", cfg.order, "truncation order");

    // verify <suite>
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "relations|invariance|vanishing|diagrams|structural|appendix|center|character|findim")
        ->required();
    verify->add_option("--pyramid", cfg.pyramid_file, "restrict to one pyramid");
    verify->add_option("--order", cfg.order, "truncation order");
    verify->add_option("--depth", cfg.depth, "module depth (character suite)");
    verify->add_option("--split", cfg.split, "split point (diagrams suite)");

    // character verma
    auto* character = app.add_subcommand("character", "Gelfand-Tsetlin characters");
    auto* verma = character->add_subcommand("verma", "character of a Verma module");
    std::string mode = "both";
    verma->add_option("--pyramid", cfg.pyramid_file)->required();
    verma->add_option("--tableau", cfg.tableau_file)->required();
    verma->add_option("--depth", cfg.depth)->capture_default_str();
    verma->add_option("--mode", mode, "oracle|formula|both")->capture_default_str();

    // findim check
    auto* findim = app.add_subcommand("findim", "finite-dimensionality criteria");
    auto* fcheck = findim->add_subcommand("check", "column-strict vs Drinfeld decision");
    fcheck->add_option("--pyramid", cfg.pyramid_file)->required();
    fcheck->add_option("--tableau", cfg.tableau_file)->required();

    // center verify | hc
    auto* center = app.add_subcommand("center", "center suite");
    auto* cverify = center->add_subcommand("verify", "psi centrality and the HChc diagram");
    cverify->add_option("--pyramid", cfg.pyramid_file)->required();
    cverify->add_option("--order", cfg.order);
    auto* chc = center->add_subcommand("hc", "Harish-Chandra images of the z series");
    std::string mn_text, parity_text;
    chc->add_option("--MN", mn_text, "M,N (consistency check)");
    chc->add_option("--parity", parity_text, "parity sequence, e.g. \"+-+-\"")->required();
    chc->add_option("--order", cfg.order);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*info) {
            Pyramid pi = load_pyramid(cfg.pyramid_file);
            Json j = pyramid_to_json(pi);
            j["rows"] = std::vector<int>(pi.p.begin() + 1, pi.p.end());
            j["M"] = pi.M;
            j["N"] = pi.N;
            ShiftMatrix s = shift_matrix_of(pi);
            j["sigma"] = s.s;
            std::vector<std::string> kap;
            for (int i = 1; i <= pi.height_bound(); ++i) kap.push_back(to_string(pi.kappa[i]));
            j["kappa"] = kap;
            j["rho"] = std::vector<int>(pi.rho.begin() + 1, pi.rho.end());
            j["reading-parity"] = pi.box_parity_seq().str();
            write_out(cfg, j);
            return 0;
        }
        if (*dump_gauss) {
            Pyramid pi = load_pyramid(cfg.pyramid_file);
            WGen w(pi);
            const int order = effective_order(cfg, w.default_order(), "dump gauss");
            GaussData g = make_gauss(w, order);
            Json j;
            j["config"] = config_echo(cfg, "dump gauss");
            Json series = Json::object();
            const int mn = pi.height_bound();
            auto put = [&](const std::string& name, const Series<EnvElement>& s, int lo) {
                Json arr = Json::array();
                for (int r = lo; r <= order; ++r)
                    arr.push_back({{"r", r}, {"value", s.at(r).str()}});
                series[name] = arr;
            };
            for (int i = 1; i <= mn; ++i) put("D" + std::to_string(i), g.D[i], 0);
            for (int i = 1; i <= mn; ++i)
                for (int jx = i + 1; jx <= mn; ++jx) {
                    put("E" + std::to_string(i) + "," + std::to_string(jx), g.e_ij(i, jx), 1);
                    put("F" + std::to_string(jx) + "," + std::to_string(i), g.f_ji(jx, i), 1);
                }
            for (int i = 1; i <= mn; ++i)
                for (int jx = 1; jx <= mn; ++jx)
                    put("T" + std::to_string(i) + "," + std::to_string(jx), g.t_series(i, jx), 0);
            j["series"] = series;
            write_out(cfg, j);
            return 0;
        }
        if (*verify) {
            std::vector<Pyramid> pis;
            if (!cfg.pyramid_file.empty()) pis.push_back(load_pyramid(cfg.pyramid_file));
            else pis = small_corpus();
            Report rep;
            if (suite == "relations") rep = suite_relations(pis, cfg.jobs, cfg.order);
            else if (suite == "invariance") rep = suite_invariance(pis, cfg.jobs);
            else if (suite == "vanishing") {
                // refuse r_max below the theorem window (per-pyramid minimum)
                if (cfg.order > 0)
                    for (const Pyramid& pi : pis) {
                        WGen w(pi);
                        int needed = w.default_order() - 1;  // max window + 1
                        if (cfg.order < needed)
                            throw CLI::ValidationError(
                                "vanishing: --order below the theorem window; need at least " +
                                std::to_string(needed) + " for " + pi.str());
                    }
                rep = suite_vanishing(pis, cfg.jobs, cfg.order);
            } else if (suite == "structural")
                rep = suite_structural(pis, cfg.jobs, cfg.order);
            else if (suite == "appendix")
                rep = suite_appendix(cfg.jobs, cfg.order > 0 ? cfg.order : 5);
            else if (suite == "diagrams") {
                if (pis.size() != 1)
                    throw CLI::ValidationError("diagrams: pass --pyramid");
                WGen w(pis[0]);
                const int order = effective_order(cfg, w.default_order(), "diagrams");
                const int lp = cfg.split >= 0 ? cfg.split : pis[0].level() / 2;
                rep = suite_diagrams(pis[0], lp, order, cfg.jobs);
            } else if (suite == "center")
                rep = suite_center(pis, cfg.jobs, cfg.order > 0 ? cfg.order : 3);
            else if (suite == "character") {
                std::vector<Pyramid> sel;
                for (const Pyramid& pi : pis)
                    if (pi.height_bound() <= 2 && pi.boxes() <= 5) sel.push_back(pi);
                rep = suite_character(sel, cfg.depth, cfg.seed, 2, cfg.jobs);
            } else if (suite == "findim") {
                rep = suite_findim(pis, 4, cfg.jobs);
            } else {
                throw CLI::ValidationError("unknown suite: " + suite);
            }
            return emit_report(cfg, "verify " + suite, rep);
        }
        if (*verma) {
            Pyramid pi = load_pyramid(cfg.pyramid_file);
            RowTab tab = load_tableau(cfg.tableau_file, pi);
            Json j;
            j["config"] = config_echo(cfg, "character verma");
            int code = 0;
            Character oracle, formula;
            if (mode == "oracle" || mode == "both") {
                WModule m(tab, cfg.depth);
                GtResult res = gt_character(m, cfg.depth);
                if (!res.ok) throw std::runtime_error("oracle failed: " + res.error);
                oracle = res.character;
                j["oracle"] = character_to_json(oracle);
            }
            if (mode == "formula" || mode == "both") {
                formula = ch_formula(tab, cfg.depth);
                j["formula"] = character_to_json(formula);
            }
            if (mode == "both") {
                bool eq = oracle == formula;
                j["equal"] = eq;
                if (!eq) code = 1;
            }
            write_out(cfg, j);
            return code;
        }
        if (*fcheck) {
            Pyramid pi = load_pyramid(cfg.pyramid_file);
            RowTab tab = load_tableau(cfg.tableau_file, pi);
            CriterionComparison cmp = colstrict_vs_criterion(tab);
            Json j;
            j["config"] = config_echo(cfg, "findim check");
            j["column_strict"] = cmp.column_strict;
            j["drinfeld"] = cmp.drinfeld;
            Json witness = Json::object();
            if (cmp.drinfeld) {
                Json P = Json::object(), Q = Json::object();
                for (size_t t = 1; t < cmp.witness.P.size(); ++t) {
                    P[std::to_string(t)] = rootmap_to_json(cmp.witness.P[t]);
                    Q[std::to_string(t)] = rootmap_to_json(cmp.witness.Q[t]);
                }
                witness["P"] = P;
                witness["Q"] = Q;
                witness["d"] = cmp.witness.d;
            }
            j["witness"] = witness;
            j["agree"] = cmp.agree();
            write_out(cfg, j);
            return cmp.agree() ? 0 : 1;
        }
        if (*cverify) {
            Pyramid pi = load_pyramid(cfg.pyramid_file);
            WGen w(pi);
            Report rep = verify_center_theorem(w, cfg.order > 0 ? cfg.order : 3);
            return emit_report(cfg, "center verify", rep);
        }
        if (*chc) {
            ParitySeq s = ParitySeq::parse(parity_text);
            if (!mn_text.empty()) {
                int M = 0, N = 0;
                if (std::sscanf(mn_text.c_str(), "%d,%d", &M, &N) != 2 || M != s.m() ||
                    N != s.n())
                    throw CLI::ValidationError("--MN disagrees with --parity");
            }
            Pyramid col = pyramid_from_heights({s.size()}, s);
            PositionedAlgebra pa = positioned(col);
            const int order = cfg.order > 0 ? cfg.order : 4;
            Series<EnvElement> Z = z_series(pa, order);
            Json j;
            j["config"] = config_echo(cfg, "center hc");
            Json arr = Json::array();
            for (int r = 1; r <= order; ++r) {
                SymElement h = hc(pa, Z.at(r));
                arr.push_back({{"r", r},
                               {"hc", h.str()},
                               {"supersymmetric", ic_member(h)},
                               {"matches_elementary", h == super_elementary(r, s.m(), s.n())}});
            }
            j["z"] = arr;
            write_out(cfg, j);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
