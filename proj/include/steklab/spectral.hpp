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

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "steklab/fem.hpp"
#include "steklab/geometry.hpp"

namespace steklab {

struct EigenResult {
    std::vector<double> sigmas;  // ascending
    std::vector<double> all_sigmas;  // full discrete spectrum, for counting
    Eigen::MatrixXd traces;      // boundary_dim x m, mass-orthonormal
    Eigen::MatrixXd fields;      // n_nodes x m, harmonic extensions
    std::string mesh_hash;
    int m = 0;

    std::vector<double> field(int i) const;
};

/// Lowest m eigenpairs of dtn x = sigma mass x.
EigenResult steklov_eigs(const Mesh& mesh, int m);
EigenResult steklov_eigs(const HarmonicExtender& extender, const BoundaryOperator& op, int m,
                         const std::string& mesh_hash = {});

/// #{k : eigs[k] < sigma}. Throws NegativeSigma for sigma < 0.
int counting_function(const std::vector<double>& eigs, double sigma);

/// Eigenvalue clusters (value, multiplicity); members lie within rel_tol * max|eig| of the first.
std::vector<std::pair<double, int>> group_multiplets(const std::vector<double>& eigs, double rel_tol = 1e-6);

/// Leading Weyl term (1/pi) L sigma for n = 2.
double weyl_term(const DomainSpec& domain, double sigma, int n = 2);
double weyl_term_from_length(double boundary_length, double sigma, int n = 2);

struct BoundFactor {
    double exponent;  // C_H i0 + 4 exp(6 (C_H + C_II) min(i0, 1/sigma))
    double log_F;
    double F;  // exp(log_F), may be +inf
};

/// Right-hand side of the counting bound with the dimensional constants removed.
BoundFactor bound_factor(const GeometryConstants& gc, double sigma, double boundary_length, int n = 2);

/// N / F evaluated in log space.
double implied_constant(int count, const BoundFactor& bf);

/// c exp(-C_H i0 - 4 exp(6 (C_H + C_II) min(i0, 1/sigma1))) v0 (j / L) - 1/nir for n = 2.
double eigenvalue_lower_bound_shape(const GeometryConstants& gc, int j, double boundary_length, double sigma1,
                                    double calibration);

}  // namespace steklab
