#pragma once

// JSON readers and writers for the on-disk formats: pyramid spec files,
// tableau files, reports and characters.

#include <fstream>

#include <json.hpp>

#include "wsuper/character.hpp"
#include "wsuper/combinat.hpp"
#include "wsuper/report.hpp"

namespace wsuper {

using Json = nlohmann::ordered_json;

// {"columns": [q1,...,ql], "parity": "+-...", "k": optional}
inline Pyramid pyramid_from_json(const Json& j) {
    if (!j.contains("columns") || !j.contains("parity"))
        throw std::invalid_argument("pyramid spec needs \"columns\" and \"parity\"");
    std::vector<int> q = j.at("columns").get<std::vector<int>>();
    ParitySeq s = ParitySeq::parse(j.at("parity").get<std::string>());
    std::optional<int> k;
    if (j.contains("k")) k = j.at("k").get<int>();
    return pyramid_from_heights(q, s, k);
}

inline Pyramid load_pyramid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pyramid file: " + path);
    Json j;
    in >> j;
    return pyramid_from_json(j);
}

inline Rat rat_from_json(const Json& v) {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) return parse_rat(v.get<std::string>());
    throw std::invalid_argument("tableau entries must be integers or \"p/q\" strings");
}

// {"rows": [[entries of row 1], ..., [entries of row m+n]]}; rows with p_i = 0
// may be omitted from the front.
inline RowTab tableau_from_json(const Json& j, const Pyramid& pi) {
    if (!j.contains("rows")) throw std::invalid_argument("tableau file needs \"rows\"");
    const auto& rj = j.at("rows");
    const int mn = pi.height_bound();
    std::vector<std::vector<Rat>> rows(mn + 1);
    int given = static_cast<int>(rj.size());
    if (given > mn) throw std::invalid_argument("too many tableau rows");
    const int offset = mn - given;  // allow dropping empty top rows
    for (int t = 0; t < given; ++t)
        for (const auto& v : rj.at(t)) rows[offset + t + 1].push_back(rat_from_json(v));
    return RowTab(pi, rows);
}

inline RowTab load_tableau(const std::string& path, const Pyramid& pi) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tableau file: " + path);
    Json j;
    in >> j;
    return tableau_from_json(j, pi);
}

inline Json pyramid_to_json(const Pyramid& pi) {
    Json j;
    j["columns"] = pi.q;
    j["parity"] = pi.parity.str();
    j["k"] = pi.k;
    return j;
}

inline Json report_to_json(const Report& rep) {
    Json checks = Json::array();
    for (const auto& r : rep.records) {
        Json c;
        c["suite"] = r.suite;
        c["check"] = r.check;
        c["indices"] = r.indices;
        c["status"] = r.pass ? "pass" : "fail";
        if (!r.witness.empty()) c["witness"] = r.witness;
        checks.push_back(c);
    }
    Json j;
    j["checks"] = checks;
    j["summary"] = {{"passed", rep.passed()}, {"failed", rep.failed()}};
    return j;
}

inline Json character_to_json(const Character& ch) {
    Json arr = Json::array();
    for (const auto& [w, m] : ch.mult) {
        Json lw = Json::object();
        for (int i = 1; i <= w.coords(); ++i) {
            Json fac = Json::array();
            for (const auto& [a, e] : w.f.at(i)) fac.push_back({to_string(a), e});
            lw[std::to_string(i)] = fac;
        }
        arr.push_back({{"lweight", lw}, {"mult", m}});
    }
    return arr;
}

inline Json rootmap_to_json(const std::map<Rat, long>& m) {
    Json arr = Json::array();
    for (const auto& [c, e] : m) arr.push_back({to_string(c), e});
    return arr;
}

}  // namespace wsuper
