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

// Acceptance suite. Usage: steklab_acceptance <criterion 1..9 | all>
// Prints diagnostic lines indented by two spaces and exactly one
// "criterion N: PASS|FAIL ..." line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "steklab/decay.hpp"
#include "steklab/errors.hpp"
#include "steklab/fem.hpp"
#include "steklab/frequency.hpp"
#include "steklab/oracle.hpp"
#include "steklab/report.hpp"
#include "steklab/spectral.hpp"

using namespace steklab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

DomainSpec unit_disk() { return make_disk(1.0); }
DomainSpec flower() { return make_flower(0.2, 3); }

std::vector<double> nodal(const Mesh& mesh, const oracle::DiskEigenfunction& f) {
    std::vector<double> u(mesh.n_nodes());
    for (int i = 0; i < mesh.n_nodes(); ++i) u[i] = f.value(mesh.nodes[i]);
    return u;
}

struct Solved {
    Mesh mesh;
    EigenResult eig;
};

Solved solve(const DomainSpec& d, int nr, int na, int m) {
    Solved s{generate_mesh(d, nr, na), {}};
    s.eig = steklov_eigs(s.mesh, m);
    return s;
}

// --------------------------------------------------------------------------
// 1. Disk spectrum oracle gate.

bool criterion1(std::string& detail) {
    const std::vector<double> expected = {0, 1, 1, 2, 2, 3, 3, 4, 4};
    auto rel_err = [&](const EigenResult& e) {
        double err = 0.0;
        for (int k = 1; k < 9; ++k) err = std::max(err, std::abs(e.sigmas[k] - expected[k]) / expected[k]);
        return err;
    };
    const auto t0 = Clock::now();
    const Solved a = solve(unit_disk(), 48, 192, 9);
    const double runtime = seconds_since(t0);
    const Solved b = solve(unit_disk(), 96, 384, 9);
    const double e48 = rel_err(a.eig), e96 = rel_err(b.eig);
    const double s0 = std::abs(a.eig.sigmas[0]);
    const double ratio = e48 / e96;
    std::printf("  (48,192) max rel err %.3e, |sigma0| %.3e, runtime %.2f s\n", e48, s0, runtime);
    std::printf("  (96,384) max rel err %.3e, ratio %.3f\n", e96, ratio);
    char buf[200];
    std::snprintf(buf, sizeof buf, "err48=%.3e sigma0=%.1e ratio=%.2f runtime=%.1fs", e48, s0, ratio, runtime);
    detail = buf;
    return e48 <= 0.01 && s0 <= 1e-6 && runtime <= 60.0 && ratio >= 3.0;
}

// --------------------------------------------------------------------------
// 2. Weyl law.

bool criterion2(std::string& detail) {
    bool ok = true;
    // Disk: eigenvalues 0 and k (twice) for k >= 1, counted independently here.
    auto disk_count = [](double sigma) {
        int n = sigma > 0.0 ? 1 : 0;
        for (int k = 1; k < sigma; ++k) n += 2;
        return n;
    };
    for (double sigma : {5.0, 10.0, 20.0}) {
        const int n_lib = static_cast<int>(oracle::disk_spectrum_below(1.0, sigma).size());
        const double ratio = n_lib / weyl_term(unit_disk(), sigma);
        const bool pass = n_lib == disk_count(sigma) && ratio >= 0.9 && ratio <= 1.1;
        std::printf("  disk oracle N(%g) = %d, ratio %.6f %s\n", sigma, n_lib, ratio, pass ? "ok" : "FAIL");
        ok = ok && pass;
    }

    const Solved s = solve(unit_disk(), 96, 384, 2);
    int checked = 0, mismatched = 0, skipped = 0;
    for (int i = 1; i <= 80; ++i) {
        const double sigma = 0.1 * i;
        // Skip sigma within 1% of an oracle eigenvalue, where the strict count is ill-conditioned.
        const double nearest = std::round(sigma);
        if (nearest >= 1.0 && std::abs(sigma - nearest) <= 0.01 * nearest) {
            ++skipped;
            continue;
        }
        ++checked;
        const int fem = counting_function(s.eig.all_sigmas, sigma);
        if (fem != disk_count(sigma)) {
            ++mismatched;
            std::printf("  FEM N(%g) = %d, oracle %d\n", sigma, fem, disk_count(sigma));
        }
    }
    std::printf("  FEM vs oracle counts on (96,384): %d checked, %d skipped near eigenvalues, %d mismatched\n", checked,
                skipped, mismatched);
    ok = ok && mismatched == 0;

    const double n_ann = static_cast<double>(oracle::annulus_spectrum_below(0.5, 1.0, 20.0).size());
    const double weyl_ann = weyl_term_from_length(2.0 * kPi * 1.5, 20.0);
    const double ann_ratio = n_ann / weyl_ann;
    std::printf("  annulus (0.5,1) N(20) = %g, weyl %g, ratio %.4f\n", n_ann, weyl_ann, ann_ratio);
    ok = ok && std::abs(ann_ratio - 1.0) <= 0.1;

    char buf[160];
    std::snprintf(buf, sizeof buf, "fem_mismatch=%d annulus_ratio=%.4f", mismatched, ann_ratio);
    detail = buf;
    return ok;
}

// --------------------------------------------------------------------------
// 3. U == k for disk harmonic polynomials.

bool criterion3(std::string& detail) {
    const DomainSpec d = unit_disk();
    const Mesh mesh = generate_mesh(d, 48, 192);
    const LevelFamily fam = make_offset_family(d, default_i0(d));
    const FrequencyEvaluator ev(mesh, fam);
    const std::vector<double> grid = level_grid(0.25, 0.98, 30);
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k)
        for (auto parity : {oracle::Parity::Cos, oracle::Parity::Sin}) {
            const std::vector<double> u = nodal(mesh, oracle::DiskEigenfunction(k, parity));
            double dev = 0.0;
            for (double r : grid) dev = std::max(dev, std::abs(ev.U(u, r) - k));
            std::printf("  k=%d %s max |U - k| = %.5f\n", k, parity == oracle::Parity::Cos ? "cos" : "sin", dev);
            worst = std::max(worst, dev);
        }
    char buf[80];
    std::snprintf(buf, sizeof buf, "max|U-k|=%.5f", worst);
    detail = buf;
    return worst <= 0.02;
}

// --------------------------------------------------------------------------
// 4. Boundary identity U(R) = R sigma.

bool criterion4(std::string& detail) {
    double worst = 0.0;
    struct Case {
        const char* name;
        DomainSpec d;
        int nr, na;
    };
    for (const Case& c : {Case{"disk", unit_disk(), 48, 192}, Case{"flower", flower(), 48, 192}}) {
        const Solved s = solve(c.d, c.nr, c.na, 9);
        const FrequencyEvaluator ev(s.mesh, make_offset_family(c.d, default_i0(c.d)));
        for (int i = 1; i <= 8; ++i) {
            const BoundaryIdentity bi = boundary_frequency_identity(ev, s.eig.field(i), s.eig.sigmas[i]);
            std::printf("  %s (%d,%d) eig %d sigma %.6f U(%.4f) = %.6f gap %.4f\n", c.name, c.nr, c.na, i,
                        s.eig.sigmas[i], bi.r, bi.U, bi.gap);
            worst = std::max(worst, bi.gap);
        }
    }
    char buf[80];
    std::snprintf(buf, sizeof buf, "max_gap=%.4f", worst);
    detail = buf;
    return worst <= 0.02;
}

// --------------------------------------------------------------------------
// 5. Derivative of I.

bool criterion5(std::string& detail) {
    // Simultaneous refinement of mesh, difference step (one ring spacing in b) and level-curve samples.
    const std::vector<int> levels = {24, 48, 96};
    const std::vector<double> radii = {0.4, 0.6, 0.8};
    std::vector<std::vector<double>> residual(levels.size());
    std::vector<std::string> names;
    for (std::size_t li = 0; li < levels.size(); ++li) {
        const int nr = levels[li], na = 4 * nr;
        const int n_quad = 512 * nr / 48;
        // Disk harmonic polynomials, distance family b = |x|.
        const DomainSpec d = unit_disk();
        const Mesh mesh = generate_mesh(d, nr, na);
        const FrequencyEvaluator ev(mesh, make_offset_family(d, default_i0(d)), n_quad);
        for (int k = 1; k <= 4; ++k) {
            const std::vector<double> u = nodal(mesh, oracle::DiskEigenfunction(k, oracle::Parity::Cos));
            double res = 0.0;
            for (double r : radii) res = std::max(res, check_I_derivative(ev, u, r, 1.0 / nr).residual);
            residual[li].push_back(res);
            if (li == 0) names.push_back("disk k=" + std::to_string(k));
        }
        // Flower eigenfields under both families.
        const DomainSpec f = flower();
        const Solved s = solve(f, nr, na, 4);
        const std::vector<LevelFamily> fams = {make_homothetic_family(f), make_offset_family(f, default_i0(f))};
        for (const LevelFamily& fam : fams) {
            const FrequencyEvaluator evf(s.mesh, fam, n_quad);
            const double step = fam.R / nr;
            for (int i : {1, 3}) {
                double res = 0.0;
                for (double frac : {0.5, 0.7}) {
                    const double r = fam.R0 + frac * (fam.R - fam.R0);
                    res = std::max(res, check_I_derivative(evf, s.eig.field(i), r, step).residual);
                }
                residual[li].push_back(res);
                if (li == 0) names.push_back("flower " + to_string(fam.kind) + " eig " + std::to_string(i));
            }
        }
    }
    bool ok = true;
    double worst48 = 0.0, worst_slope = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < names.size(); ++c) {
        const double r24 = residual[0][c], r48 = residual[1][c], r96 = residual[2][c];
        const double slope = std::log2(r24 / r96) / 2.0;
        std::printf("  %-28s residual (24,96) %.3e (48,192) %.3e (96,384) %.3e slope %.2f\n", names[c].c_str(), r24,
                    r48, r96, slope);
        worst48 = std::max(worst48, r48);
        worst_slope = std::min(worst_slope, slope);
        ok = ok && r48 <= 0.01 && slope >= 1.8;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "max_residual(48,192)=%.3e min_slope=%.2f", worst48, worst_slope);
    detail = buf;
    return ok;
}

// --------------------------------------------------------------------------
// 6. Decay window.

bool criterion6(std::string& detail) {
    const std::vector<double> rho = default_rho_grid(0.01, 0.05, 9);
    const DomainSpec d = unit_disk();
    const Solved s = solve(d, 48, 192, 9);
    bool ok = true;
    double disk_slope = 0.0;
    for (int i : {7, 8}) {
        const DecayProfile p = trace_profile(s.mesh, d, s.eig.field(i), s.eig.sigmas[i], rho);
        const DecayCheck c = decay_window_check(p);
        std::printf("  disk eig %d sigma %.6f slope %.4f (target -9 +- 0.2) window [%.4f, %.4f]\n", i, s.eig.sigmas[i],
                    c.slope, c.window_low, c.window_high);
        ok = ok && std::abs(c.slope + 9.0) <= 0.2 && c.pass;
        disk_slope = c.slope;
    }
    const DomainSpec f = flower();
    const Solved sf = solve(f, 48, 192, 9);
    int failures = 0;
    for (int i = 1; i <= 8; ++i) {
        const DecayProfile p = trace_profile(sf.mesh, f, sf.eig.field(i), sf.eig.sigmas[i], rho);
        const DecayCheck c = decay_window_check(p);
        std::printf("  flower eig %d sigma %.6f slope %.4f window [%.4f, %.4f] %s\n", i, sf.eig.sigmas[i], c.slope,
                    c.window_low, c.window_high, c.pass ? "ok" : "FAIL");
        if (!c.pass) ++failures;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "disk_k4_slope=%.4f flower_failures=%d", disk_slope, failures);
    detail = buf;
    return ok && failures == 0;
}

// --------------------------------------------------------------------------
// 7. Growth and doubling estimates, distance family.

bool criterion7(std::string& detail) {
    int failures = 0, fields = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& [name, d] : {std::pair<std::string, DomainSpec>{"disk", unit_disk()}, {"flower", flower()}}) {
        const Solved s = solve(d, 48, 192, 13);
        const double i0 = default_i0(d);
        const LevelFamily fam = make_offset_family(d, i0);
        const GeometryConstants gc = geometry_constants(d, i0, s.eig.sigmas[1], fam);
        const FrequencyEvaluator ev(s.mesh, fam);
        const double outer = 1.0 - s.mesh.ring_fraction[s.mesh.n_radial - 1];
        const std::vector<double> grid =
            level_grid(std::max(fam.R0 * (1.0 + 1e-9), 0.25 * fam.R), fam.R * (1.0 - 2.0 * outer), 24);
        std::printf("  %s C_H %.4f C_II %.4f R %.4f R0 %.4f\n", name.c_str(), gc.C_H, gc.C_II, fam.R, fam.R0);
        for (int i = 1; i <= 12; ++i) {
            ++fields;
            const double sigma = s.eig.sigmas[i];
            const std::vector<double> u = s.eig.field(i);
            const FrequencyCurve fc = frequency_curve(ev, u, grid);
            const GrowthReport gr = growth_checks(fc, gc, sigma, fam.R, 0.0, 1.05);
            const DoublingCheck dc = doubling_check(ev, u, gc, sigma, 0.0, 0.0, 1.05);
            std::string line;
            for (const GrowthEntry& e : gr.entries) {
                char b[64];
                std::snprintf(b, sizeof b, " %s %.3g", e.name.c_str(), e.worst_margin);
                line += b;
                worst = std::min(worst, e.worst_margin);
            }
            worst = std::min(worst, dc.margin);
            std::printf("  %s eig %d sigma %.4f:%s doubling %.3g (lambda %.4f)%s\n", name.c_str(), i, sigma,
                        line.c_str(), dc.margin, dc.lambda, gr.pass && dc.pass ? "" : " FAIL");
            if (!gr.pass || !dc.pass) ++failures;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "fields=%d failures=%d worst_margin=%.3g", fields, failures, worst);
    detail = buf;
    return failures == 0;
}

// --------------------------------------------------------------------------
// 8. Bound-factor property.

bool criterion8(std::string& detail) {
    bool ok = true;
    std::string summary;
    for (const auto& [name, d] : {std::pair<std::string, DomainSpec>{"disk", unit_disk()}, {"flower", flower()}}) {
        const Solved s = solve(d, 48, 192, 2);
        const double L = boundary_length(d);
        const double i0 = default_i0(d);
        const GeometryConstants gc = geometry_constants(d, i0, 5.0, make_offset_family(d, i0));
        double log_sup = -std::numeric_limits<double>::infinity(), log_sup_30 = log_sup;
        bool finite = true;
        for (int sigma = 5; sigma <= 40; ++sigma) {
            const int N = counting_function(s.eig.all_sigmas, sigma);
            const BoundFactor bf = bound_factor(gc, sigma, L);
            const double log_ratio = std::log(static_cast<double>(N)) - bf.log_F;
            finite = finite && std::isfinite(log_ratio);
            log_sup = std::max(log_sup, log_ratio);
            if (sigma <= 30) log_sup_30 = log_sup;
            if (sigma % 5 == 0)
                std::printf("  %s sigma %d N %d log F %.6g log(N/F) %.6g\n", name.c_str(), sigma, N, bf.log_F,
                            log_ratio);
        }
        // Relative growth of the running sup over the last decade sigma in [30, 40].
        const double variation = 1.0 - std::exp(log_sup_30 - log_sup);
        std::printf("  %s running sup log(N/F) %.6g, last-decade variation %.6g\n", name.c_str(), log_sup, variation);
        ok = ok && finite && variation <= 0.10;
        char b[96];
        std::snprintf(b, sizeof b, "%s%s:log_sup=%.4g,variation=%.4g", summary.empty() ? "" : " ", name.c_str(),
                      log_sup, variation);
        summary += b;
    }
    detail = summary;
    return ok;
}

// --------------------------------------------------------------------------
// 9. Determinism.

bool criterion9(std::string& detail) {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "steklab-acceptance-9";
    fs::remove_all(base);
    RunConfig cfg = load_config(std::string(STEKLAB_SOURCE_DIR) + "/configs/disk.json");
    std::vector<RunManifest> runs;
    for (const char* tag : {"a", "b", "cached-1", "cached-2"}) {
        cfg.output_dir = (base / tag).string();
        cfg.cache = std::string(tag).rfind("cached", 0) == 0;
        cfg.cache_dir = (base / "cache").string();
        runs.push_back(run(cfg));
    }
    int differing = 0, files = 0;
    for (const auto& [table, sum] : runs[0].tables) {
        const std::string ref = read_file((base / "a" / table).string());
        for (const char* tag : {"b", "cached-1", "cached-2"}) {
            ++files;
            if (read_file((base / tag / table).string()) != ref) {
                ++differing;
                std::printf("  %s differs in run %s\n", table.c_str(), tag);
            }
        }
    }
    std::printf("  %zu tables, %d comparisons, cache hits on last run %d\n", runs[0].tables.size(), files,
                runs[3].cache_hits);
    fs::remove_all(base);
    char buf[120];
    std::snprintf(buf, sizeof buf, "tables=%zu differing=%d cache_hits=%d", runs[0].tables.size(), differing,
                  runs[3].cache_hits);
    detail = buf;
    return differing == 0 && runs[0].tables.size() == 6 && runs[3].cache_hits > 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<bool(std::string&)>> criteria = {criterion1, criterion2, criterion3,
                                                                     criterion4, criterion5, criterion6,
                                                                     criterion7, criterion8, criterion9};
    std::vector<int> which;
    const std::string arg = argc > 1 ? argv[1] : "all";
    if (arg == "all") {
        for (int i = 1; i <= 9; ++i) which.push_back(i);
    } else {
        const int c = std::atoi(arg.c_str());
        if (c < 1 || c > 9) {
            std::fprintf(stderr, "usage: %s <1..9|all>\n", argv[0]);
            return 2;
        }
        which.push_back(c);
    }
    int failed = 0;
    for (int c : which) {
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[c - 1](detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %d: %s %s\n", c, pass ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
