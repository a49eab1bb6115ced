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
#include <limits>

#include "domain_impl.hpp"
#include "steklab/errors.hpp"
#include "steklab/kernels.hpp"

namespace steklab {

namespace {

constexpr int kNirSamples = 512;
constexpr double kNirTol = 1e-6;

struct Jet {
    Vec2 p, d1, d2;
};

Jet boundary_jet(const DomainSpec& d, double theta) {
    const RadialSample r = d.radial(theta);
    const double c = std::cos(theta), s = std::sin(theta);
    return {{r.r * c, r.r * s},
            {r.dr * c - r.r * s, r.dr * s + r.r * c},
            {r.d2r * c - 2.0 * r.dr * s - r.r * c, r.d2r * s + 2.0 * r.dr * c - r.r * s}};
}

// Derivative of |P(theta) - x|^2 / 2.
double dfoot(const DomainSpec& d, const Vec2& x, double theta) {
    const Jet j = boundary_jet(d, theta);
    return (j.p - x).dot(j.d1);
}

}  // namespace

DomainSpec::Foot DomainSpec::distance_to_boundary(const Vec2& x) const {
    const Impl& im = *impl_;
    const kernels::NearestPoint np =
        kernels::active().nearest_point(x.x(), x.y(), im.sample_x.data(), im.sample_y.data(), im.sample_x.size());
    const double spacing = 2.0 * kPi / static_cast<double>(im.sample_theta.size());
    const double theta0 = im.sample_theta[np.index];
    Foot best{std::sqrt(np.dist_sq), theta0};

    double h = 1.5 * spacing;
    double lo = 0, hi = 0, glo = 0, ghi = 0;
    bool bracketed = false;
    for (int attempt = 0; attempt < 6 && !bracketed; ++attempt, h *= 2.0) {
        lo = theta0 - h;
        hi = theta0 + h;
        glo = dfoot(*this, x, lo);
        ghi = dfoot(*this, x, hi);
        bracketed = glo <= 0.0 && ghi >= 0.0;
    }
    if (!bracketed) return best;

    // Safeguarded Newton on the stationarity condition.
    double t = theta0;
    for (int it = 0; it < 60; ++it) {
        const Jet j = boundary_jet(*this, t);
        const Vec2 e = j.p - x;
        const double g = e.dot(j.d1);
        const double gp = j.d1.squaredNorm() + e.dot(j.d2);
        if (g < 0.0)
            lo = t;
        else
            hi = t;
        double next = (gp > 0.0) ? t - g / gp : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - t);
        t = next;
        if (step < 1e-15 || hi - lo < 1e-15) break;
    }
    const double dist = (boundary_jet(*this, t).p - x).norm();
    if (dist <= best.distance) best = {dist, std::remainder(t, 2.0 * kPi)};
    if (best.theta < 0.0) best.theta += 2.0 * kPi;
    return best;
}

Vec2 offset_point(const DomainSpec& domain, double rho, double theta) {
    return domain.boundary_point(theta) + rho * domain.inward_normal(theta);
}

namespace {

bool offsets_verified(const DomainSpec& d, const std::vector<double>& theta, const std::vector<Vec2>& base,
                      const std::vector<Vec2>& normal, const std::vector<double>& kappa, double t) {
    const std::size_t n = theta.size();
    const double tol = kNirTol * d.scale();
    std::vector<Vec2> p(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (t > 0.0 && 1.0 - kappa[j] * t <= 0.0) return false;
        p[j] = base[j] + t * normal[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1) % n;
        const Vec2 dp = p[k] - p[j];
        if (!(dp.norm() > 0.0) || dp.dot(base[k] - base[j]) <= 0.0) return false;
    }
    if (t == 0.0) return true;
    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(d.distance_to_boundary(p[j]).distance - t) > tol) return false;
    return true;
}

double compute_nir(const DomainSpec& d) {
    std::vector<double> theta(kNirSamples), kappa(kNirSamples);
    std::vector<Vec2> base(kNirSamples), normal(kNirSamples);
    for (int j = 0; j < kNirSamples; ++j) {
        theta[j] = 2.0 * kPi * j / kNirSamples;
        base[j] = d.boundary_point(theta[j]);
        normal[j] = d.inward_normal(theta[j]);
        kappa[j] = d.boundary_curvature(theta[j]);
    }
    if (!offsets_verified(d, theta, base, normal, kappa, 0.0))
        fail(ErrorCode::DegenerateBoundary, "boundary samples are not a simple positively oriented loop");
    double lo = 0.0;
    double hi = d.scale() * d.phi_max();
    for (int it = 0; it < 64 && hi - lo > 1e-13 * d.scale(); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (offsets_verified(d, theta, base, normal, kappa, mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

double normal_injectivity_radius(const DomainSpec& domain) {
    const auto& im = domain.impl();
    std::call_once(im.nir_once, [&] { im.nir = compute_nir(domain); });
    return im.nir;
}

double offset_curvature(const DomainSpec& domain, double rho, double theta) {
    if (!(rho >= 0.0)) fail(ErrorCode::InvalidArgument, "offset distance must be nonnegative");
    const double nir = normal_injectivity_radius(domain);
    if (rho >= nir)
        fail(ErrorCode::BeyondInjectivityRadius, "rho = " + std::to_string(rho) + " >= nir = " + std::to_string(nir));
    const double k0 = domain.boundary_curvature(theta);
    return k0 / (1.0 - k0 * rho);
}

}  // namespace steklab
