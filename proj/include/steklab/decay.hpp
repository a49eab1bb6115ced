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

#include <vector>

#include "steklab/geometry.hpp"
#include "steklab/mesh.hpp"

namespace steklab {

struct DecayProfile {
    std::vector<double> rho_grid;  // ascending, rho_grid[0] = 0
    std::vector<double> values;    // integral of u^2 over the offset curve at each rho
    double sigma = 0;
    double H_inf = 0;
    double H_sup = 0;

    /// values[i] / values[0]
    std::vector<double> ratios() const;
};

/// {0} followed by `count` evenly spaced offsets in [lo, hi].
std::vector<double> default_rho_grid(double lo = 0.01, double hi = 0.05, int count = 9);

/// Line integrals of the P1 field u along inward offset curves of the boundary.
/// Requires at least 8 offsets, rho_grid[0] = 0 and
/// max rho <= min(0.2 nir, 0.5 / sigma); throws BeyondInjectivityRadius otherwise.
DecayProfile trace_profile(const Mesh& mesh, const DomainSpec& domain, const std::vector<double>& u, double sigma,
                           const std::vector<double>& rho_grid, int n_quad = 0);

struct DecayCheck {
    double slope;  // d/drho of log ratio at rho = 0
    double window_low;
    double window_high;
    double tol;
    bool pass;
};

/// Slope of log(ratio) at rho = 0 from a least-squares quadratic in rho, tested
/// against [-2 sigma - H_sup - tol, -2 sigma - H_inf + tol] with
/// tol = 0.05 (2 sigma + H_sup) + 0.5 max(rho) sigma.
DecayCheck decay_window_check(const DecayProfile& profile);

}  // namespace steklab
