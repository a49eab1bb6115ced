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
#include <limits>

#include "steklab/errors.hpp"
#include "steklab/spectral.hpp"

namespace steklab {

std::vector<double> EigenResult::field(int i) const {
    if (i < 0 || i >= fields.cols()) fail(ErrorCode::InvalidArgument, "eigenpair index out of range");
    return {fields.col(i).data(), fields.col(i).data() + fields.rows()};
}

EigenResult steklov_eigs(const Mesh& mesh, int m) {
    const HarmonicExtender ext(mesh);
    return steklov_eigs(ext, ext.dtn(), m, mesh.hash());
}

EigenResult steklov_eigs(const HarmonicExtender& ext, const BoundaryOperator& op, int m,
                         const std::string& mesh_hash) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "m must be at least 1");
    if (m > op.boundary_dim)
        fail(ErrorCode::TooManyRequested,
             std::to_string(m) + " eigenpairs requested, boundary has " + std::to_string(op.boundary_dim) + " nodes");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dtn, op.mass,
                                                                  Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success) fail(ErrorCode::NonConvergence, "generalized eigensolver failed");

    EigenResult res;
    res.m = m;
    res.mesh_hash = mesh_hash;
    res.all_sigmas.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    res.sigmas.assign(res.all_sigmas.begin(), res.all_sigmas.begin() + m);
    res.traces = es.eigenvectors().leftCols(m);
    for (int i = 0; i < m; ++i) {
        Eigen::Index arg = 0;
        res.traces.col(i).cwiseAbs().maxCoeff(&arg);
        if (res.traces(arg, i) < 0.0) res.traces.col(i) *= -1.0;
    }
    res.fields.resize(ext.n_interior() + ext.n_boundary(), m);
    for (int i = 0; i < m; ++i) res.fields.col(i) = ext.extend(res.traces.col(i));
    return res;
}

int counting_function(const std::vector<double>& eigs, double sigma) {
    if (sigma < 0.0) fail(ErrorCode::NegativeSigma, "sigma = " + std::to_string(sigma));
    return static_cast<int>(std::lower_bound(eigs.begin(), eigs.end(), sigma) - eigs.begin());
}

std::vector<std::pair<double, int>> group_multiplets(const std::vector<double>& eigs, double rel_tol) {
    std::vector<std::pair<double, int>> out;
    if (eigs.empty()) return out;
    double smax = 0.0;
    for (double s : eigs) smax = std::max(smax, std::abs(s));
    const double tol = rel_tol * smax;
    for (double s : eigs) {
        if (!out.empty() && s - out.back().first <= tol)
            ++out.back().second;
        else
            out.emplace_back(s, 1);
    }
    return out;
}

double weyl_term_from_length(double boundary_length, double sigma, int n) {
    if (n != 2) fail(ErrorCode::UnsupportedDimension, "only n = 2 is supported");
    if (sigma < 0.0) fail(ErrorCode::NegativeSigma, "sigma = " + std::to_string(sigma));
    return boundary_length * sigma / kPi;
}

double weyl_term(const DomainSpec& domain, double sigma, int n) {
    return weyl_term_from_length(boundary_length(domain), sigma, n);
}

BoundFactor bound_factor(const GeometryConstants& gc, double sigma, double boundary_length, int n) {
    if (n != 2) fail(ErrorCode::UnsupportedDimension, "only n = 2 is supported");
    if (gc.K > 0.0) fail(ErrorCode::CurvedNotSupported, "Ricci parameter K > 0 needs the unknown C(n)");
    if (!(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be positive");
    if (!(gc.i0 > 0.0 && gc.v0 > 0.0 && boundary_length > 0.0))
        fail(ErrorCode::InvalidArgument, "geometry constants are not valid");
    BoundFactor bf;
    bf.exponent = gc.C_H * gc.i0 + 4.0 * std::exp(6.0 * (gc.C_H + gc.C_II) * std::min(gc.i0, 1.0 / sigma));
    bf.log_F = bf.exponent - std::log(gc.v0) + std::log(boundary_length) + (n - 1) * std::log(1.0 / gc.i0 + sigma);
    bf.F = std::exp(bf.log_F);
    return bf;
}

double implied_constant(int count, const BoundFactor& bf) {
    if (count <= 0) return 0.0;
    return std::exp(std::log(static_cast<double>(count)) - bf.log_F);
}

double eigenvalue_lower_bound_shape(const GeometryConstants& gc, int j, double boundary_length, double sigma1,
                                    double calibration) {
    if (gc.K > 0.0) fail(ErrorCode::CurvedNotSupported, "Ricci parameter K > 0 needs the unknown C(n)");
    if (j < 1) fail(ErrorCode::InvalidArgument, "j must be at least 1");
    if (!(sigma1 > 0.0) || !(boundary_length > 0.0) || !(gc.nir > 0.0))
        fail(ErrorCode::InvalidArgument, "sigma1, boundary length and nir must be positive");
    const double expo = -gc.C_H * gc.i0 - 4.0 * std::exp(6.0 * (gc.C_H + gc.C_II) * std::min(gc.i0, 1.0 / sigma1));
    return calibration * std::exp(expo) * gc.v0 * (static_cast<double>(j) / boundary_length) - 1.0 / gc.nir;
}

}  // namespace steklab
