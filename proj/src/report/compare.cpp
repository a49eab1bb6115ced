// Copyright 2026-present the steklab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include "steklab/errors.hpp"
#include "steklab/report.hpp"
#include "steklab/util.hpp"

namespace steklab {

namespace {

bool parse_number(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return *end == '\0';
}

// Max relative error of fem rows against oracle rows with equal (domain, mesh, k), nonzero oracle values only.
double oracle_error(const CsvTable& t) {
    const auto col = [&](const char* name) {
        const auto it = std::find(t.header.begin(), t.header.end(), name);
        if (it == t.header.end()) fail(ErrorCode::SchemaMismatch, std::string("spectrum.csv lacks column ") + name);
        return static_cast<std::size_t>(it - t.header.begin());
    };
    const std::size_t cd = col("domain"), cm = col("mesh"), cs = col("source"), ck = col("k"), cv = col("sigma");
    std::map<std::string, double> ref;
    for (const auto& r : t.rows)
        if (r[cs] == "oracle") ref[r[cd] + "|" + r[cm] + "|" + r[ck]] = std::strtod(r[cv].c_str(), nullptr);
    double err = 0.0;
    for (const auto& r : t.rows) {
        if (r[cs] != "fem") continue;
        const auto it = ref.find(r[cd] + "|" + r[cm] + "|" + r[ck]);
        if (it == ref.end() || it->second == 0.0) continue;
        err = std::max(err, std::abs(std::strtod(r[cv].c_str(), nullptr) - it->second) / std::abs(it->second));
    }
    return err;
}

}  // namespace

CompareReport compare_runs(const std::string& manifest_a, const std::string& manifest_b) {
    const RunManifest a = RunManifest::from_json(read_file(manifest_a));
    const RunManifest b = RunManifest::from_json(read_file(manifest_b));
    const std::filesystem::path dir_a = std::filesystem::path(manifest_a).parent_path();
    const std::filesystem::path dir_b = std::filesystem::path(manifest_b).parent_path();

    CompareReport rep;
    for (const auto& [name, sum_a] : a.tables) {
        if (!b.tables.count(name)) continue;
        const std::string text_a = read_file((dir_a / name).string());
        const std::string text_b = read_file((dir_b / name).string());
        if (sha256_hex(text_a) != sum_a || sha256_hex(text_b) != b.tables.at(name))
            fail(ErrorCode::CacheCorrupt, name + " does not match its manifest checksum");
        const CsvTable ta = CsvTable::parse(text_a);
        const CsvTable tb = CsvTable::parse(text_b);
        if (ta.header != tb.header) fail(ErrorCode::SchemaMismatch, name + ": headers differ");
        if (ta.rows.size() != tb.rows.size())
            fail(ErrorCode::SchemaMismatch, name + ": " + std::to_string(ta.rows.size()) + " vs " +
                                                std::to_string(tb.rows.size()) + " rows");
        TableDiff td{name, static_cast<int>(ta.rows.size()), 0.0, 0.0};
        for (std::size_t i = 0; i < ta.rows.size(); ++i)
            for (std::size_t j = 0; j < ta.header.size(); ++j) {
                double x = 0, y = 0;
                if (!parse_number(ta.rows[i][j], x) || !parse_number(tb.rows[i][j], y)) continue;
                if (x == y) continue;
                const double d = std::abs(x - y);
                td.max_abs = std::max(td.max_abs, d);
                const double scale = std::max(std::abs(x), std::abs(y));
                if (scale > 0.0) td.max_rel = std::max(td.max_rel, d / scale);
            }
        rep.tables.push_back(td);

        if (name == "spectrum.csv") {
            rep.oracle_err_a = oracle_error(ta);
            rep.oracle_err_b = oracle_error(tb);
            rep.oracle_ratio = rep.oracle_err_b > 0.0 ? rep.oracle_err_a / rep.oracle_err_b : 0.0;
        }
    }
    return rep;
}

std::string CompareReport::to_text() const {
    std::string s = "table,rows,max_abs,max_rel\n";
    for (const TableDiff& t : tables)
        s += t.table + "," + std::to_string(t.rows) + "," + fmt17(t.max_abs) + "," + fmt17(t.max_rel) + "\n";
    s += "oracle_error_a," + fmt17(oracle_err_a) + "\noracle_error_b," + fmt17(oracle_err_b) + "\noracle_ratio," +
         fmt17(oracle_ratio) + "\n";
    return s;
}

}  // namespace steklab
