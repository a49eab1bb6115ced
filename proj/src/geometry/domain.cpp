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

#include "domain_impl.hpp"
#include "steklab/errors.hpp"
#include "steklab/kernels.hpp"

namespace steklab {

namespace {

constexpr int kValidationGrid = 4096;
constexpr int kBoundarySamples = 4096;

void eval_profile(const DomainSpec::Impl& d, const double* theta, std::size_t n, double* f, double* df,
                  double* d2f) {
    std::vector<double> c(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = std::cos(theta[i]);
        s[i] = std::sin(theta[i]);
    }
    kernels::active().fourier_series(d.a.data(), d.b.data(), d.a.size(), c.data(), s.data(), n, f, df, d2f);
}

}  // namespace

DomainSpec make_star_domain(const FourierCoeffs& coeffs, double scale, int n_quad) {
    if (coeffs.cos_coeffs.empty()) fail(ErrorCode::EmptyCoefficients, "cosine coefficient list is empty");
    const std::size_t modes = std::max(coeffs.cos_coeffs.size(), coeffs.sin_coeffs.size());
    if (modes > static_cast<std::size_t>(DomainSpec::kMaxModes) + 1)
        fail(ErrorCode::TooManyModes, "profile has " + std::to_string(modes - 1) + " harmonics, limit is " +
                                          std::to_string(DomainSpec::kMaxModes));
    if (!(scale > 0.0) || !std::isfinite(scale)) fail(ErrorCode::InvalidArgument, "scale must be positive");
    if (n_quad < 8) fail(ErrorCode::InvalidArgument, "n_quad must be at least 8");
    for (double v : coeffs.cos_coeffs)
        if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite coefficient");
    for (double v : coeffs.sin_coeffs)
        if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite coefficient");

    auto impl = std::make_shared<DomainSpec::Impl>();
    impl->a.assign(modes, 0.0);
    impl->b.assign(modes, 0.0);
    std::copy(coeffs.cos_coeffs.begin(), coeffs.cos_coeffs.end(), impl->a.begin());
    std::copy(coeffs.sin_coeffs.begin(), coeffs.sin_coeffs.end(), impl->b.begin());
    impl->b[0] = 0.0;
    impl->scale = scale;
    impl->n_quad = n_quad;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int grid : {kValidationGrid, n_quad}) {
        std::vector<double> th(grid), f(grid), df(grid), d2f(grid);
        for (int i = 0; i < grid; ++i) th[i] = 2.0 * kPi * i / grid;
        eval_profile(*impl, th.data(), th.size(), f.data(), df.data(), d2f.data());
        for (double v : f) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo > 0.0)) fail(ErrorCode::NonPositiveProfile, "min phi = " + std::to_string(lo));
    impl->phi_min = lo;
    impl->phi_max = hi;

    impl->sample_theta.resize(kBoundarySamples);
    impl->sample_x.resize(kBoundarySamples);
    impl->sample_y.resize(kBoundarySamples);
    std::vector<double> f(kBoundarySamples), df(kBoundarySamples), d2f(kBoundarySamples);
    for (int i = 0; i < kBoundarySamples; ++i) impl->sample_theta[i] = 2.0 * kPi * i / kBoundarySamples;
    eval_profile(*impl, impl->sample_theta.data(), kBoundarySamples, f.data(), df.data(), d2f.data());
    for (int i = 0; i < kBoundarySamples; ++i) {
        const double r = scale * f[i];
        impl->sample_x[i] = r * std::cos(impl->sample_theta[i]);
        impl->sample_y[i] = r * std::sin(impl->sample_theta[i]);
    }
    return DomainSpec(std::move(impl));
}

DomainSpec make_disk(double radius, int n_quad) { return make_star_domain({{1.0}, {}}, radius, n_quad); }

DomainSpec make_flower(double amplitude, int petals, double scale, int n_quad) {
    if (petals < 1) fail(ErrorCode::InvalidArgument, "petal count must be positive");
    FourierCoeffs c;
    c.cos_coeffs.assign(petals + 1, 0.0);
    c.cos_coeffs[0] = 1.0;
    c.cos_coeffs[petals] = amplitude;
    return make_star_domain(c, scale, n_quad);
}

const std::vector<double>& DomainSpec::cos_coeffs() const { return impl_->a; }
const std::vector<double>& DomainSpec::sin_coeffs() const { return impl_->b; }
double DomainSpec::scale() const { return impl_->scale; }
int DomainSpec::n_quad() const { return impl_->n_quad; }
double DomainSpec::phi_min() const { return impl_->phi_min; }
double DomainSpec::phi_max() const { return impl_->phi_max; }

RadialSample DomainSpec::radial(double theta) const {
    double f, df, d2f;
    eval_profile(*impl_, &theta, 1, &f, &df, &d2f);
    const double s = impl_->scale;
    return {s * f, s * df, s * d2f};
}

void DomainSpec::radial(const std::vector<double>& theta, std::vector<double>& r, std::vector<double>& dr,
                        std::vector<double>& d2r) const {
    const std::size_t n = theta.size();
    r.resize(n);
    dr.resize(n);
    d2r.resize(n);
    eval_profile(*impl_, theta.data(), n, r.data(), dr.data(), d2r.data());
    const double s = impl_->scale;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] *= s;
        dr[i] *= s;
        d2r[i] *= s;
    }
}

Vec2 DomainSpec::boundary_point(double theta) const {
    const double r = radial(theta).r;
    return {r * std::cos(theta), r * std::sin(theta)};
}

Vec2 DomainSpec::boundary_tangent(double theta) const {
    const RadialSample p = radial(theta);
    const double c = std::cos(theta), s = std::sin(theta);
    return {p.dr * c - p.r * s, p.dr * s + p.r * c};
}

Vec2 DomainSpec::inward_normal(double theta) const {
    const Vec2 t = boundary_tangent(theta).normalized();
    return {-t.y(), t.x()};
}

double DomainSpec::boundary_curvature(double theta) const {
    const RadialSample p = radial(theta);
    const double q = p.r * p.r + p.dr * p.dr;
    return (p.r * p.r + 2.0 * p.dr * p.dr - p.r * p.d2r) / (q * std::sqrt(q));
}

bool DomainSpec::contains(const Vec2& x) const {
    const double t = x.norm();
    if (t == 0.0) return true;
    return t < radial(std::atan2(x.y(), x.x())).r;
}

double boundary_length(const DomainSpec& domain) {
    const int n = domain.n_quad();
    std::vector<double> th(n), r, dr, d2r;
    for (int i = 0; i < n; ++i) th[i] = 2.0 * kPi * i / n;
    domain.radial(th, r, dr, d2r);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += std::sqrt(r[i] * r[i] + dr[i] * dr[i]);
    return sum * 2.0 * kPi / n;
}

double domain_area(const DomainSpec& domain) {
    const int n = domain.n_quad();
    std::vector<double> th(n), r, dr, d2r;
    for (int i = 0; i < n; ++i) th[i] = 2.0 * kPi * i / n;
    domain.radial(th, r, dr, d2r);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += 0.5 * r[i] * r[i];
    return sum * 2.0 * kPi / n;
}

}  // namespace steklab
