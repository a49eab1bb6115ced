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
#include <chrono>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "steklab/decay.hpp"
#include "steklab/errors.hpp"
#include "steklab/fem.hpp"
#include "steklab/frequency.hpp"
#include "steklab/oracle.hpp"
#include "steklab/report.hpp"
#include "steklab/spectral.hpp"
#include "steklab/util.hpp"

#ifndef STEKLAB_VERSION
#define STEKLAB_VERSION "0.0.0"
#endif

namespace steklab {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kSlack = 1.05;
constexpr double kBoundaryGapTol = 0.02;
constexpr double kInf = std::numeric_limits<double>::infinity();

class StageClock {
public:
    StageClock(std::map<std::string, double>& acc, std::string name)
        : acc_(acc), name_(std::move(name)), t0_(Clock::now()) {}
    ~StageClock() { acc_[name_] += std::chrono::duration<double>(Clock::now() - t0_).count(); }

private:
    std::map<std::string, double>& acc_;
    std::string name_;
    Clock::time_point t0_;
};

template <class F>
auto in_stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::StageFailure) throw;
        fail(ErrorCode::StageFailure, name + ": " + e.what());
    }
}

std::optional<double> disk_radius(const DomainSpec& d) {
    const auto& a = d.cos_coeffs();
    const auto& b = d.sin_coeffs();
    for (std::size_t k = 1; k < a.size(); ++k)
        if (a[k] != 0.0 || b[k] != 0.0) return std::nullopt;
    return d.scale() * a[0];
}

// ---------------------------------------------------------------------------
// Cache: "<sha256 of body>\n<body>"

std::string seal(const std::string& body) { return sha256_hex(body) + "\n" + body; }

std::string unseal(const std::string& text) {
    const auto nl = text.find('\n');
    if (nl == std::string::npos) fail(ErrorCode::CacheCorrupt, "missing checksum line");
    std::string body = text.substr(nl + 1);
    if (sha256_hex(body) != text.substr(0, nl)) fail(ErrorCode::CacheCorrupt, "checksum mismatch");
    return body;
}

std::string eig_to_text(const EigenResult& e) {
    std::string s = "steklab-eig 1\nmesh " + e.mesh_hash + "\nm " + std::to_string(e.m) + "\nall " +
                    std::to_string(e.all_sigmas.size()) + "\n";
    for (double v : e.all_sigmas) s += fmt17(v) + "\n";
    s += "fields " + std::to_string(e.fields.rows()) + " " + std::to_string(e.fields.cols()) + "\n";
    for (Eigen::Index i = 0; i < e.fields.rows(); ++i) {
        for (Eigen::Index j = 0; j < e.fields.cols(); ++j) {
            if (j) s += ' ';
            s += fmt17(e.fields(i, j));
        }
        s += '\n';
    }
    return s;
}

EigenResult eig_from_text(const std::string& text, int n_boundary) {
    std::istringstream in(text);
    std::string tag;
    int version = 0;
    EigenResult e;
    std::size_t n_all = 0;
    Eigen::Index rows = 0, cols = 0;
    auto expect = [&](const char* want) {
        if (!(in >> tag) || tag != want) fail(ErrorCode::CacheCorrupt, std::string("expected '") + want + "'");
    };
    auto num = [&]() {
        std::string tok;
        if (!(in >> tok)) fail(ErrorCode::CacheCorrupt, "truncated eigenpair file");
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (*end != '\0') fail(ErrorCode::CacheCorrupt, "bad number '" + tok + "'");
        return v;
    };
    expect("steklab-eig");
    if (!(in >> version) || version != 1) fail(ErrorCode::CacheCorrupt, "unsupported eigenpair file version");
    expect("mesh");
    in >> e.mesh_hash;
    expect("m");
    in >> e.m;
    expect("all");
    in >> n_all;
    if (!in || n_all > 10000000) fail(ErrorCode::CacheCorrupt, "bad eigenpair header");
    e.all_sigmas.resize(n_all);
    for (double& v : e.all_sigmas) v = num();
    expect("fields");
    in >> rows >> cols;
    if (!in || cols != e.m || rows < n_boundary || static_cast<std::size_t>(e.m) > n_all)
        fail(ErrorCode::CacheCorrupt, "bad field block");
    e.fields.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) e.fields(i, j) = num();
    e.sigmas.assign(e.all_sigmas.begin(), e.all_sigmas.begin() + e.m);
    e.traces = e.fields.bottomRows(n_boundary);
    return e;
}

struct Solved {
    Mesh mesh;
    EigenResult eig;
};

Solved solve_domain(const NamedDomain& d, const MeshResolution& res, const RunConfig& cfg, RunManifest& man) {
    const std::string cache_dir = cfg.cache_dir.empty() ? cfg.output_dir + "/cache" : cfg.cache_dir;
    const std::string key = sha256_hex(d.spec.hash() + "|" + res.label() + "|" + fmt17(cfg.grading) + "|" +
                                       std::to_string(cfg.m));
    const std::string mesh_path = cache_dir + "/" + key + ".mesh";
    const std::string eig_path = cache_dir + "/" + key + ".eig";

    if (cfg.cache && std::filesystem::exists(mesh_path) && std::filesystem::exists(eig_path)) {
        try {
            Solved s;
            {
                StageClock c(man.stage_seconds, "mesh");
                s.mesh = Mesh::from_text(unseal(read_file(mesh_path)));
            }
            StageClock c(man.stage_seconds, "spectral");
            s.eig = eig_from_text(unseal(read_file(eig_path)), s.mesh.n_boundary());
            if (s.eig.mesh_hash != s.mesh.hash() || s.eig.fields.rows() != s.mesh.n_nodes())
                fail(ErrorCode::CacheCorrupt, "eigenpairs do not belong to the cached mesh");
            ++man.cache_hits;
            return s;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CacheCorrupt && e.code() != ErrorCode::MeshFormat) throw;
            // fall through and recompute
        }
    }

    Solved s;
    {
        StageClock c(man.stage_seconds, "mesh");
        s.mesh = in_stage("mesh", [&] { return generate_mesh(d.spec, res.n_radial, res.n_angular, cfg.grading); });
    }
    {
        StageClock c(man.stage_seconds, "spectral");
        s.eig = in_stage("spectral", [&] { return steklov_eigs(s.mesh, cfg.m); });
    }
    if (cfg.cache) {
        write_file(mesh_path, seal(s.mesh.to_text()));
        write_file(eig_path, seal(eig_to_text(s.eig)));
    }
    return s;
}

}  // namespace

const char* version() { return STEKLAB_VERSION; }

RunManifest run(const RunConfig& cfg, const RunOptions& opts) {
    RunManifest man;
    man.version = version();
    {
        RunConfig hashed = cfg;
        hashed.output_dir.clear();
        hashed.cache = false;
        hashed.cache_dir.clear();
        man.config_hash = sha256_hex(config_to_json(hashed));
    }
    const unsigned st = opts.stages;
    const bool need_gc = st & (kStageCounting | kStageConstants | kStageFrequency);
    const double sigma_min = cfg.sigma_grid.front();

    CsvTable spectrum{{"domain", "mesh", "source", "k", "sigma"}, {}};
    CsvTable counting{{"domain", "mesh", "source", "sigma", "N", "weyl", "ratio", "bound_factor", "implied_constant",
                       "log_bound_factor", "log_implied_constant"}, {}};
    CsvTable frequency{{"domain", "mesh", "family", "eig", "sigma", "r", "I", "D", "U", "U_bound", "U_margin"}, {}};
    CsvTable decay{{"domain", "mesh", "eig", "sigma", "slope", "window_low", "window_high", "pass"}, {}};
    CsvTable constants = CsvTable::parse(constants_csv_header() + "\n");
    constants.header.insert(constants.header.begin(), "domain");
    CsvTable checks{{"domain", "mesh", "family", "eig", "check", "value", "lower", "upper", "pass"}, {}};

    auto add_check = [&](const std::string& dom, const std::string& mesh, const std::string& fam, int eig,
                         const std::string& name, double value, double lower, double upper) {
        const bool pass = value >= lower && value <= upper;
        if (!pass) ++man.checks_failed;
        checks.add({dom, mesh, fam, std::to_string(eig), name, fmt17(value), fmt17(lower), fmt17(upper),
                    pass ? "1" : "0"});
    };

    for (const NamedDomain& d : cfg.domains) {
        man.domain_hashes[d.name] = d.spec.hash();
        const std::optional<double> disk = disk_radius(d.spec);

        double L = 0, i0 = 0;
        GeometryConstants gc;
        std::optional<LevelFamily> offset;
        {
            StageClock c(man.stage_seconds, "geometry");
            in_stage("geometry", [&] {
                L = boundary_length(d.spec);
                i0 = cfg.i0 ? *cfg.i0 : default_i0(d.spec);
                offset = make_offset_family(d.spec, i0);
                if (need_gc) gc = geometry_constants(d.spec, i0, sigma_min, *offset);
                return 0;
            });
        }
        if (st & kStageConstants) {
            CsvTable row = CsvTable::parse(constants_csv_header() + "\n" + constants_csv_row(d.spec, gc) + "\n");
            row.rows.at(0).insert(row.rows[0].begin(), d.name);
            constants.add(row.rows[0]);
        }

        for (const MeshResolution& res : cfg.meshes) {
            const std::string ml = res.label();
            const Solved s = solve_domain(d, res, cfg, man);
            man.mesh_hashes[d.name + "/" + ml] = s.mesh.hash();

            if (st & kStageSpectrum) {
                for (int k = 0; k < s.eig.m; ++k) spectrum.add({d.name, ml, "fem", std::to_string(k), fmt17(s.eig.sigmas[k])});
                if (disk) {
                    const std::vector<double> ref = oracle::disk_spectrum(*disk, s.eig.m);
                    for (int k = 0; k < s.eig.m; ++k) spectrum.add({d.name, ml, "oracle", std::to_string(k), fmt17(ref[k])});
                }
            }

            if (st & kStageCounting) {
                StageClock c(man.stage_seconds, "counting");
                in_stage("counting", [&] {
                    for (double sigma : cfg.sigma_grid) {
                        const double weyl = weyl_term_from_length(L, sigma);
                        const BoundFactor bf = bound_factor(gc, sigma, L);
                        auto row = [&](const char* src, int N) {
                            counting.add({d.name, ml, src, fmt17(sigma), std::to_string(N), fmt17(weyl),
                                          fmt17(N / weyl), fmt17(bf.F), fmt17(implied_constant(N, bf)), fmt17(bf.log_F),
                                          fmt17(N > 0 ? std::log(static_cast<double>(N)) - bf.log_F : -kInf)});
                        };
                        row("fem", counting_function(s.eig.all_sigmas, sigma));
                        if (disk) row("oracle", static_cast<int>(oracle::disk_spectrum_below(*disk, sigma).size()));
                    }
                    return 0;
                });
            }

            if (st & kStageFrequency) {
                StageClock c(man.stage_seconds, "frequency");
                in_stage("frequency", [&] {
                    const double outer = 1.0 - s.mesh.ring_fraction[s.mesh.n_radial - 1];
                    for (FamilyKind kind : cfg.families) {
                        const LevelFamily fam = kind == FamilyKind::Homothetic ? make_homothetic_family(d.spec) : *offset;
                        const std::string fl = to_string(kind);
                        const FrequencyEvaluator ev(s.mesh, fam);
                        const double lo = std::max(fam.R0 * (1.0 + 1e-9), cfg.r_min_fraction * fam.R);
                        const double hi = fam.R * (cfg.r_max_fraction ? *cfg.r_max_fraction : 1.0 - 2.0 * outer);
                        if (!(hi > lo)) fail(ErrorCode::OutOfBand, "empty r grid for family " + fl);
                        const std::vector<double> grid = level_grid(lo, hi, cfg.r_count);
                        const double C2 = kind == FamilyKind::Homothetic ? ev.C2() : 0.0;
                        const double ch = gc.C_H + gc.C_II;
                        for (int i = 1; i <= cfg.eigs; ++i) {
                            const double sigma = s.eig.sigmas[i];
                            const std::vector<double> u = s.eig.field(i);
                            const FrequencyCurve fc = frequency_curve(ev, u, grid);
                            double U_sup = 0.0;
                            for (std::size_t k = 0; k < grid.size(); ++k) {
                                U_sup = std::max(U_sup, fc.U_vals[k]);
                                std::string ub, um;
                                if (kind == FamilyKind::DistanceOffset) {
                                    const double bound = fam.R * sigma * std::exp(2.0 * ch * (fam.R - grid[k]));
                                    ub = fmt17(bound);
                                    um = fmt17(bound / fc.U_vals[k]);
                                }
                                frequency.add({d.name, ml, fl, std::to_string(i), fmt17(sigma), fmt17(grid[k]),
                                               fmt17(fc.I_vals[k]), fmt17(fc.D_vals[k]), fmt17(fc.U_vals[k]), ub, um});
                            }
                            const GrowthReport gr = growth_checks(fc, gc, sigma, fam.R, C2, kSlack);
                            for (const GrowthEntry& e : gr.entries)
                                add_check(d.name, ml, fl, i, e.name, e.worst_margin, 1.0 / kSlack, kInf);
                            const DoublingCheck dc = doubling_check(ev, u, gc, sigma, C2, U_sup, kSlack);
                            add_check(d.name, ml, fl, i, "doubling", dc.margin, 1.0 / kSlack, kInf);
                            if (kind == FamilyKind::DistanceOffset) {
                                const BoundaryIdentity bi = boundary_frequency_identity(ev, u, sigma);
                                add_check(d.name, ml, fl, i, "boundary_identity_gap", bi.gap, 0.0, kBoundaryGapTol);
                            }
                        }
                    }
                    return 0;
                });
            }

            if (st & kStageDecay) {
                StageClock c(man.stage_seconds, "decay");
                in_stage("decay", [&] {
                    for (int i = 1; i <= cfg.eigs; ++i) {
                        const double sigma = s.eig.sigmas[i];
                        const DecayProfile prof = trace_profile(s.mesh, d.spec, s.eig.field(i), sigma, cfg.rho_grid);
                        const DecayCheck dc = decay_window_check(prof);
                        decay.add({d.name, ml, std::to_string(i), fmt17(sigma), fmt17(dc.slope), fmt17(dc.window_low),
                                   fmt17(dc.window_high), dc.pass ? "1" : "0"});
                        add_check(d.name, ml, "offset", i, "decay_slope", dc.slope, dc.window_low, dc.window_high);
                    }
                    return 0;
                });
            }
        }
    }

    StageClock c(man.stage_seconds, "output");
    auto emit = [&](const char* name, const CsvTable& t) {
        const std::string text = t.to_text();
        write_file(cfg.output_dir + "/" + name, text);
        man.tables[name] = sha256_hex(text);
    };
    if (st & kStageSpectrum) emit("spectrum.csv", spectrum);
    if (st & kStageCounting) emit("counting.csv", counting);
    if (st & kStageFrequency) emit("frequency.csv", frequency);
    if (st & kStageDecay) emit("decay.csv", decay);
    if (st & kStageConstants) emit("constants.csv", constants);
    if (st & (kStageFrequency | kStageDecay)) emit(kChecksName, checks);
    write_file(cfg.output_dir + "/" + kManifestName, man.to_json());
    return man;
}

std::string RunManifest::to_json() const {
    json j;
    j["config_hash"] = config_hash;
    j["version"] = version;
    j["domains"] = domain_hashes;
    j["meshes"] = mesh_hashes;
    j["tables"] = tables;
    j["stage_seconds"] = stage_seconds;
    j["cache_hits"] = cache_hits;
    j["checks_failed"] = checks_failed;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    RunManifest m;
    try {
        const json j = json::parse(text);
        m.config_hash = j.at("config_hash").get<std::string>();
        m.version = j.at("version").get<std::string>();
        m.domain_hashes = j.at("domains").get<std::map<std::string, std::string>>();
        m.mesh_hashes = j.at("meshes").get<std::map<std::string, std::string>>();
        m.tables = j.at("tables").get<std::map<std::string, std::string>>();
        m.stage_seconds = j.value("stage_seconds", std::map<std::string, double>{});
        m.cache_hits = j.value("cache_hits", 0);
        m.checks_failed = j.value("checks_failed", 0);
    } catch (const json::exception& e) {
        fail(ErrorCode::SchemaMismatch, std::string("manifest: ") + e.what());
    }
    return m;
}

}  // namespace steklab
