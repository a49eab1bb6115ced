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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "steklab/decay.hpp"
#include "steklab/errors.hpp"

namespace steklab {

std::vector<double> DecayProfile::ratios() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / values[0];
    return out;
}

std::vector<double> default_rho_grid(double lo, double hi, int count) {
    if (count < 2 || !(lo > 0.0) || !(lo < hi)) fail(ErrorCode::InvalidArgument, "rho grid needs 0 < lo < hi");
    std::vector<double> g{0.0};
    for (int i = 0; i < count; ++i) g.push_back(lo + (hi - lo) * i / (count - 1));
    g.back() = hi;
    return g;
}

DecayProfile trace_profile(const Mesh& mesh, const DomainSpec& domain, const std::vector<double>& u, double sigma,
                           const std::vector<double>& rho_grid, int n_quad) {
    if (static_cast<int>(u.size()) != mesh.n_nodes()) fail(ErrorCode::InvalidArgument, "field size mismatch");
    if (rho_grid.size() < 8) fail(ErrorCode::BeyondInjectivityRadius, "rho grid needs at least 8 offsets");
    if (rho_grid.front() != 0.0) fail(ErrorCode::InvalidArgument, "rho grid must start at 0");
    for (std::size_t i = 1; i < rho_grid.size(); ++i)
        if (!(rho_grid[i] > rho_grid[i - 1])) fail(ErrorCode::InvalidArgument, "rho grid must be ascending");
    if (sigma < 0.0) fail(ErrorCode::NegativeSigma, "sigma = " + std::to_string(sigma));

    const double nir = normal_injectivity_radius(domain);
    const double limit = std::min(0.2 * nir, sigma > 0.0 ? 0.5 / sigma : std::numeric_limits<double>::infinity());
    const double max_rho = rho_grid.back();
    if (max_rho > limit)
        fail(ErrorCode::BeyondInjectivityRadius,
             "max rho " + std::to_string(max_rho) + " exceeds " + std::to_string(limit));

    const int n = n_quad > 0 ? n_quad : domain.n_quad();
    const double dth = 2.0 * kPi / n;
    std::vector<Vec2> p(n), nu(n);
    std::vector<double> speed(n), kappa(n);
    for (int j = 0; j < n; ++j) {
        const double th = dth * j;
        p[j] = domain.boundary_point(th);
        nu[j] = domain.inward_normal(th);
        speed[j] = domain.boundary_tangent(th).norm();
        kappa[j] = domain.boundary_curvature(th);
    }

    DecayProfile prof;
    prof.rho_grid = rho_grid;
    prof.sigma = sigma;
    prof.H_inf = std::numeric_limits<double>::infinity();
    prof.H_sup = -std::numeric_limits<double>::infinity();
    const MeshLocator loc(mesh);
    for (double rho : rho_grid) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double stretch = 1.0 - kappa[j] * rho;
            const double val = loc.interpolate(u, p[j] + rho * nu[j]);
            acc += speed[j] * stretch * dth * val * val;
            const double H = kappa[j] / stretch;
            prof.H_inf = std::min(prof.H_inf, H);
            prof.H_sup = std::max(prof.H_sup, H);
        }
        prof.values.push_back(acc);
    }
    if (!(prof.values.front() > 0.0)) fail(ErrorCode::InvalidArgument, "field vanishes on the boundary");
    return prof;
}

DecayCheck decay_window_check(const DecayProfile& prof) {
    const std::size_t n = prof.rho_grid.size();
    if (n < 3 || prof.values.size() != n) fail(ErrorCode::InvalidArgument, "profile needs at least 3 samples");
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = prof.rho_grid[i];
        A(i, 0) = 1.0;
        A(i, 1) = r;
        A(i, 2) = r * r;
        y(i) = std::log(prof.values[i] / prof.values[0]);
    }
    const Eigen::Vector3d c = A.colPivHouseholderQr().solve(y);
    DecayCheck d;
    d.slope = c(1);
    const double s2 = 2.0 * prof.sigma;
    d.tol = 0.05 * (s2 + prof.H_sup) + 0.5 * prof.rho_grid.back() * prof.sigma;
    d.window_low = -s2 - prof.H_sup - d.tol;
    d.window_high = -s2 - prof.H_inf + d.tol;
    d.pass = std::isfinite(d.slope) && d.slope >= d.window_low && d.slope <= d.window_high;
    return d;
}

}  // namespace steklab
