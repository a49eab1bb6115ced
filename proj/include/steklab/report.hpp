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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steklab/geometry.hpp"

namespace steklab {

struct NamedDomain {
    std::string name;
    DomainSpec spec;
};

struct MeshResolution {
    int n_radial;
    int n_angular;
    std::string label() const;  // "NRxNA"
};

/// Parsed run configuration. JSON keys:
/// domains, meshes, grading, m, eigs, sigma, i0, families, r_grid, rho_grid,
/// output_dir, cache, cache_dir, deterministic.
struct RunConfig {
    std::vector<NamedDomain> domains;
    std::vector<MeshResolution> meshes;
    double grading = 1.0;
    int m = 24;     // eigenpairs kept with fields
    int eigs = 8;   // nonzero eigenpairs analysed by the frequency and decay stages
    std::vector<double> sigma_grid;
    std::optional<double> i0;  // empty = 0.9 nir
    std::vector<FamilyKind> families;
    int r_count = 24;
    double r_min_fraction = 0.25;
    std::optional<double> r_max_fraction;  // empty = 1 - 2 * outer ring width
    std::vector<double> rho_grid;
    std::string output_dir = "steklab-out";
    bool cache = false;
    std::string cache_dir;  // empty = <output_dir>/cache
    bool deterministic = true;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
/// Canonical JSON of the resolved configuration; its SHA-256 is the config hash.
std::string config_to_json(const RunConfig& cfg);
/// "a:b:step" with a > 0, b >= a, step > 0, inclusive of b up to rounding.
std::vector<double> parse_sigma_range(const std::string& text);
MeshResolution parse_mesh_resolution(const std::string& text);

// ---------------------------------------------------------------------------
// CSV

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::string to_text() const;
    static CsvTable parse(const std::string& text);
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// ---------------------------------------------------------------------------
// Pipeline

enum Stage : unsigned {
    kStageSpectrum = 1u << 0,
    kStageCounting = 1u << 1,
    kStageFrequency = 1u << 2,
    kStageDecay = 1u << 3,
    kStageConstants = 1u << 4,
    kStageAll = 0x1Fu,
};

struct RunOptions {
    unsigned stages = kStageAll;
};

struct RunManifest {
    std::string config_hash;
    std::map<std::string, std::string> domain_hashes;
    std::map<std::string, std::string> mesh_hashes;  // "<domain>/<NRxNA>"
    std::string version;
    std::map<std::string, std::string> tables;  // file name -> sha256
    std::map<std::string, double> stage_seconds;
    int cache_hits = 0;
    int checks_failed = 0;

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kChecksName = "checks.log";

/// Runs the selected stages for every domain and mesh, writes the tables and
/// manifest.json into cfg.output_dir. Module errors surface as StageFailure.
RunManifest run(const RunConfig& cfg, const RunOptions& opts = {});

const char* version();

// ---------------------------------------------------------------------------
// Comparison

struct TableDiff {
    std::string table;
    int rows = 0;
    double max_abs = 0;
    double max_rel = 0;
};

struct CompareReport {
    std::vector<TableDiff> tables;
    /// Max relative FEM error against oracle rows of spectrum.csv in each run
    /// (nonzero eigenvalues), and a / b. Zero when a run has no oracle rows.
    double oracle_err_a = 0, oracle_err_b = 0, oracle_ratio = 0;

    std::string to_text() const;
};

/// Numeric diff of the tables listed in both manifests. Throws SchemaMismatch
/// when a table's header or row count differs.
CompareReport compare_runs(const std::string& manifest_a, const std::string& manifest_b);

}  // namespace steklab
