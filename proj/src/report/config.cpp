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

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "steklab/errors.hpp"
#include "steklab/report.hpp"

namespace steklab {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {"domains", "meshes",   "grading",  "m",          "eigs",
                                     "sigma",   "i0",       "families", "family",     "r_grid",
                                     "rho_grid", "output_dir", "cache", "cache_dir", "deterministic"};

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ConfigParse, what); }

NamedDomain parse_domain(const json& j, std::size_t index) {
    if (!j.is_object()) bad("domains[" + std::to_string(index) + "] must be an object");
    NamedDomain d{j.value("name", "domain" + std::to_string(index)), make_disk(1.0)};
    if (d.name.empty() || d.name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") !=
                              std::string::npos)
        bad("domain name '" + d.name + "' must be nonempty and use only [A-Za-z0-9_.-]");
    const int n_quad = j.value("n_quad", DomainSpec::kDefaultQuad);
    if (j.contains("disk")) {
        const json& p = j.at("disk");
        d.spec = make_disk(p.value("radius", 1.0), n_quad);
    } else if (j.contains("flower")) {
        const json& p = j.at("flower");
        d.spec = make_flower(p.value("amplitude", 0.2), p.value("petals", 3), p.value("scale", 1.0), n_quad);
    } else if (j.contains("cos")) {
        FourierCoeffs c;
        c.cos_coeffs = j.at("cos").get<std::vector<double>>();
        if (j.contains("sin")) c.sin_coeffs = j.at("sin").get<std::vector<double>>();
        d.spec = make_star_domain(c, j.value("scale", 1.0), n_quad);
    } else {
        bad("domain '" + d.name + "' needs one of disk, flower or cos");
    }
    return d;
}

std::vector<double> parse_grid(const json& j, const char* what) {
    std::vector<double> g;
    if (j.is_string()) {
        g = parse_sigma_range(j.get<std::string>());
    } else if (j.is_array()) {
        g = j.get<std::vector<double>>();
    } else {
        bad(std::string(what) + " must be a string or an array");
    }
    if (g.empty()) bad(std::string(what) + " grid is empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i])) bad(std::string(what) + " grid has a non-finite value");
        if (i > 0 && !(g[i] > g[i - 1])) bad(std::string(what) + " grid must be strictly ascending");
    }
    return g;
}

}  // namespace

std::string MeshResolution::label() const { return std::to_string(n_radial) + "x" + std::to_string(n_angular); }

MeshResolution parse_mesh_resolution(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) bad("mesh resolution '" + text + "' is not NRxNA");
    try {
        std::size_t p1 = 0, p2 = 0;
        const int nr = std::stoi(text.substr(0, x), &p1);
        const int na = std::stoi(text.substr(x + 1), &p2);
        if (p1 != x || p2 != text.size() - x - 1 || nr < 1 || na < 3) throw std::invalid_argument(text);
        return {nr, na};
    } catch (const std::logic_error&) {
        bad("mesh resolution '" + text + "' is not NRxNA");
    }
}

std::vector<double> parse_sigma_range(const std::string& text) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        bad("sigma range '" + text + "' is not a:b:step");
    if (!(a > 0.0)) bad("sigma grid must be positive");
    if (!(b >= a) || !(step > 0.0)) bad("sigma range needs b >= a and step > 0");
    const long n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 1000000) bad("sigma range has too many points");
    std::vector<double> g(n);
    for (long i = 0; i < n; ++i) g[i] = a + step * i;
    return g;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad(e.what());
    }
    if (!j.is_object()) bad("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!kKeys.count(it.key())) bad("unknown key '" + it.key() + "'");

    RunConfig cfg;
    try {
        if (!j.contains("domains") || !j.at("domains").is_array() || j.at("domains").empty())
            bad("domains must be a nonempty array");
        std::set<std::string> names;
        for (std::size_t i = 0; i < j.at("domains").size(); ++i) {
            cfg.domains.push_back(parse_domain(j.at("domains")[i], i));
            if (!names.insert(cfg.domains.back().name).second) bad("duplicate domain name '" + cfg.domains.back().name + "'");
        }

        if (j.contains("meshes")) {
            for (const json& m : j.at("meshes")) {
                if (m.is_string())
                    cfg.meshes.push_back(parse_mesh_resolution(m.get<std::string>()));
                else if (m.is_array() && m.size() == 2)
                    cfg.meshes.push_back({m[0].get<int>(), m[1].get<int>()});
                else
                    bad("meshes entries must be \"NRxNA\" or [NR, NA]");
            }
        } else {
            cfg.meshes.push_back({48, 192});
        }
        if (cfg.meshes.empty()) bad("meshes is empty");
        for (const MeshResolution& r : cfg.meshes)
            if (r.n_radial < 1 || r.n_angular < 3) bad("mesh resolution " + r.label() + " is too small");

        cfg.grading = j.value("grading", cfg.grading);
        cfg.m = j.value("m", cfg.m);
        cfg.eigs = j.value("eigs", cfg.eigs);
        if (cfg.m < 2) bad("m must be at least 2");
        if (cfg.eigs < 1 || cfg.eigs >= cfg.m) bad("eigs must lie in [1, m - 1]");

        cfg.sigma_grid = j.contains("sigma") ? parse_grid(j.at("sigma"), "sigma") : parse_sigma_range("1:10:1");
        for (double s : cfg.sigma_grid)
            if (!(s > 0.0)) bad("sigma grid must be positive");

        if (j.contains("i0")) {
            const json& v = j.at("i0");
            if (v.is_string()) {
                if (v.get<std::string>() != "auto") bad("i0 must be a number or \"auto\"");
            } else {
                cfg.i0 = v.get<double>();
                if (!(*cfg.i0 > 0.0)) bad("i0 must be positive");
            }
        }

        if (j.contains("families") && j.contains("family")) bad("give either family or families");
        if (j.contains("family")) {
            cfg.families.push_back(family_kind_from_string(j.at("family").get<std::string>()));
        } else if (j.contains("families")) {
            for (const json& f : j.at("families")) cfg.families.push_back(family_kind_from_string(f.get<std::string>()));
        } else {
            cfg.families = {FamilyKind::Homothetic, FamilyKind::DistanceOffset};
        }
        if (cfg.families.empty()) bad("families is empty");

        if (j.contains("r_grid")) {
            const json& r = j.at("r_grid");
            cfg.r_count = r.value("count", cfg.r_count);
            cfg.r_min_fraction = r.value("min_fraction", cfg.r_min_fraction);
            if (r.contains("max_fraction") && !r.at("max_fraction").is_string())
                cfg.r_max_fraction = r.at("max_fraction").get<double>();
        }
        if (cfg.r_count < 2) bad("r_grid.count must be at least 2");
        if (!(cfg.r_min_fraction > 0.0 && cfg.r_min_fraction < 1.0)) bad("r_grid.min_fraction must lie in (0, 1)");
        if (cfg.r_max_fraction && !(*cfg.r_max_fraction > cfg.r_min_fraction && *cfg.r_max_fraction <= 1.0))
            bad("r_grid.max_fraction must lie in (min_fraction, 1]");

        if (j.contains("rho_grid")) {
            const json& r = j.at("rho_grid");
            if (r.is_object()) {
                cfg.rho_grid = {0.0};
                const double lo = r.value("lo", 0.01), hi = r.value("hi", 0.05);
                const int count = r.value("count", 9);
                if (count < 2 || !(lo > 0.0) || !(hi > lo)) bad("rho_grid needs 0 < lo < hi and count >= 2");
                for (int i = 0; i < count; ++i) cfg.rho_grid.push_back(lo + (hi - lo) * i / (count - 1));
            } else {
                cfg.rho_grid = r.get<std::vector<double>>();
            }
        } else {
            cfg.rho_grid = {0.0};
            for (int i = 0; i < 9; ++i) cfg.rho_grid.push_back(0.01 + 0.005 * i);
        }
        if (cfg.rho_grid.empty() || cfg.rho_grid.front() != 0.0) bad("rho_grid must start at 0");
        for (std::size_t i = 1; i < cfg.rho_grid.size(); ++i)
            if (!(cfg.rho_grid[i] > cfg.rho_grid[i - 1])) bad("rho_grid must be strictly ascending");

        cfg.output_dir = j.value("output_dir", cfg.output_dir);
        cfg.cache = j.value("cache", cfg.cache);
        cfg.cache_dir = j.value("cache_dir", cfg.cache_dir);
        cfg.deterministic = j.value("deterministic", cfg.deterministic);
        if (!cfg.deterministic) bad("deterministic must be true: the pipeline has no random component");
    } catch (const json::exception& e) {
        bad(e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigParse) throw;
        bad(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["domains"] = json::array();
    for (const NamedDomain& d : cfg.domains) {
        json e = json::parse(d.spec.to_json());
        e["name"] = d.name;
        j["domains"].push_back(e);
    }
    j["meshes"] = json::array();
    for (const MeshResolution& r : cfg.meshes) j["meshes"].push_back(r.label());
    j["grading"] = cfg.grading;
    j["m"] = cfg.m;
    j["eigs"] = cfg.eigs;
    j["sigma"] = cfg.sigma_grid;
    j["i0"] = cfg.i0 ? json(*cfg.i0) : json("auto");
    j["families"] = json::array();
    for (FamilyKind f : cfg.families) j["families"].push_back(to_string(f));
    j["r_grid"] = {{"count", cfg.r_count},
                   {"min_fraction", cfg.r_min_fraction},
                   {"max_fraction", cfg.r_max_fraction ? json(*cfg.r_max_fraction) : json("auto")}};
    j["rho_grid"] = cfg.rho_grid;
    j["output_dir"] = cfg.output_dir;
    j["cache"] = cfg.cache;
    j["cache_dir"] = cfg.cache_dir;
    j["deterministic"] = cfg.deterministic;
    return j.dump(2);
}

}  // namespace steklab
