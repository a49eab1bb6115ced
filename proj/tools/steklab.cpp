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

#include <CLI11.hpp>
#include <iostream>

#include "steklab/errors.hpp"
#include "steklab/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;
constexpr int kExitCheck = 4;

struct Overrides {
    std::string config, out, mesh, sigma, i0, family;
    bool cache = false;
    bool check = false;
    int m = 0;
};

steklab::RunConfig resolve(const Overrides& o) {
    steklab::RunConfig cfg = o.config.empty() ? steklab::parse_config(R"({"domains": [{"name": "disk", "disk": {}}]})")
                                              : steklab::load_config(o.config);
    if (!o.out.empty()) cfg.output_dir = o.out;
    if (o.cache) cfg.cache = true;
    if (!o.mesh.empty()) cfg.meshes = {steklab::parse_mesh_resolution(o.mesh)};
    if (o.m > 0) {
        if (o.m < 2 || cfg.eigs >= o.m) steklab::fail(steklab::ErrorCode::ConfigParse, "--m must exceed eigs");
        cfg.m = o.m;
    }
    if (!o.sigma.empty()) cfg.sigma_grid = steklab::parse_sigma_range(o.sigma);
    if (!o.i0.empty()) {
        if (o.i0 == "auto") {
            cfg.i0.reset();
        } else {
            try {
                cfg.i0 = std::stod(o.i0);
            } catch (const std::logic_error&) {
                steklab::fail(steklab::ErrorCode::ConfigParse, "--i0 must be a number or auto");
            }
            if (!(*cfg.i0 > 0.0)) steklab::fail(steklab::ErrorCode::ConfigParse, "--i0 must be positive");
        }
    }
    if (!o.family.empty()) {
        try {
            cfg.families = {steklab::family_kind_from_string(o.family)};
        } catch (const steklab::Error& e) {
            steklab::fail(steklab::ErrorCode::ConfigParse, e.what());
        }
    }
    return cfg;
}

void add_run_flags(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_flag("--cache", o.cache, "Reuse cached meshes and eigenpairs");
    sub->add_option("--mesh", o.mesh, "Mesh resolution NRxNA");
    sub->add_option("--m", o.m, "Eigenpair count");
    sub->add_option("--sigma", o.sigma, "Sigma grid a:b:step");
    sub->add_option("--i0", o.i0, "Working radius or auto");
    sub->add_option("--family", o.family, "homothetic or offset")->check(CLI::IsMember({"homothetic", "offset"}));
    sub->add_flag("--check", o.check, "Exit with status 4 when a property check fails");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steklov spectra and frequency-function checks on planar star-shaped domains"};
    app.set_version_flag("--version", steklab::version());
    app.require_subcommand(1);

    Overrides o;
    struct Stage {
        const char* name;
        const char* help;
        unsigned mask;
    };
    const std::vector<Stage> runs = {
        {"solve", "Steklov eigenpairs", steklab::kStageSpectrum},
        {"count", "Counting function and bound factor",
         steklab::kStageSpectrum | steklab::kStageCounting | steklab::kStageConstants},
        {"frequency", "Frequency functions on level curves", steklab::kStageSpectrum | steklab::kStageFrequency},
        {"decay", "Boundary-layer decay profiles", steklab::kStageSpectrum | steklab::kStageDecay},
        {"sweep", "All stages", steklab::kStageAll},
    };
    std::map<CLI::App*, unsigned> stages;
    for (const auto& [name, help, mask] : runs) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_run_flags(sub, o);
        stages[sub] = mask;
    }
    std::string manifest_a, manifest_b;
    CLI::App* cmp = app.add_subcommand("compare", "Diff the tables of two runs");
    cmp->add_option("manifest_a", manifest_a)->required();
    cmp->add_option("manifest_b", manifest_b)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (cmp->parsed()) {
            std::cout << steklab::compare_runs(manifest_a, manifest_b).to_text();
            return 0;
        }
        CLI::App* sub = app.get_subcommands().front();
        const steklab::RunConfig cfg = resolve(o);
        steklab::RunOptions opts;
        opts.stages = stages.at(sub);
        const steklab::RunManifest man = steklab::run(cfg, opts);
        for (const auto& [name, sum] : man.tables) std::cout << name << " " << sum << "\n";
        if (man.checks_failed > 0) std::cerr << man.checks_failed << " property checks failed\n";
        if (o.check && man.checks_failed > 0) return kExitCheck;
        return 0;
    } catch (const steklab::Error& e) {
        std::cerr << e.what() << "\n";
        if (e.code() == steklab::ErrorCode::ConfigParse) return kExitConfig;
        return kExitStage;
    }
}
