#pragma once

#include <string>
#include <vector>

namespace wsuper {

struct CheckRecord {
    std::string suite;
    std::string check;
    std::vector<int> indices;
    bool pass = true;
    std::string witness;  // residue / detail on failure, empty otherwise
};

struct Report {
    std::vector<CheckRecord> records;

    void add(std::string suite, std::string check, std::vector<int> indices, bool pass,
             std::string witness = "") {
        records.push_back({std::move(suite), std::move(check), std::move(indices), pass,
                           std::move(witness)});
    }
    void append(const Report& other) {
        records.insert(records.end(), other.records.begin(), other.records.end());
    }
    int failed() const {
        int n = 0;
        for (const auto& r : records) n += r.pass ? 0 : 1;
        return n;
    }
    int passed() const { return static_cast<int>(records.size()) - failed(); }
    bool ok() const { return failed() == 0; }
};

}  // namespace wsuper
