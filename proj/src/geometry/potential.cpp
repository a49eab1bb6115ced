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
#include "steklab/geometry.hpp"

namespace steklab {

namespace {

constexpr int kProfileGrid = 4096;

// Rotates polar-frame components (e_t, e_theta) to Cartesian.
Mat2 frame(double theta) {
    Mat2 q;
    const double c = std::cos(theta), s = std::sin(theta);
    q << c, -s, s, c;
    return q;
}

}  // namespace

std::string to_string(FamilyKind kind) {
    return kind == FamilyKind::Homothetic ? "homothetic" : "offset";
}

FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "homothetic") return FamilyKind::Homothetic;
    if (s == "offset" || s == "distance" || s == "distance_offset") return FamilyKind::DistanceOffset;
    fail(ErrorCode::InvalidArgument, "unknown level family '" + s + "'");
}

double homothetic_radius(const DomainSpec& domain) {
    std::vector<double> th(kProfileGrid), r, dr, d2r;
    for (int i = 0; i < kProfileGrid; ++i) th[i] = 2.0 * kPi * i / kProfileGrid;
    domain.radial(th, r, dr, d2r);
    double inf_r = r[0], sup_lit = 0.0, sup_sq = 0.0, admissible = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kProfileGrid; ++i) {
        inf_r = std::min(inf_r, r[i]);
        sup_lit = std::max(sup_lit, std::abs(dr[i]) / (r[i] * r[i]));
        sup_sq = std::max(sup_sq, dr[i] * dr[i] / (r[i] * r[i]));
        admissible = std::min(admissible, r[i] * r[i] / std::sqrt(r[i] * r[i] + dr[i] * dr[i]));
    }
    const double literal = inf_r / std::sqrt(1.0 + sup_lit);
    if (literal <= admissible * (1.0 + 1e-12)) return std::min(literal, admissible);
    return inf_r / std::sqrt(1.0 + sup_sq);
}

LevelFamily make_homothetic_family(const DomainSpec& domain, std::optional<double> R, std::optional<double> R0) {
    const double r = R ? *R : homothetic_radius(domain);
    const double r0 = R0 ? *R0 : 0.25 * r;
    if (!(r > 0.0) || !(r0 > 0.0) || !(r0 < r))
        fail(ErrorCode::InvalidArgument, "homothetic family needs 0 < R0 < R");
    return {FamilyKind::Homothetic, domain, r, r0};
}

LevelFamily make_offset_family(const DomainSpec& domain, double i0, std::optional<double> R) {
    const double nir = normal_injectivity_radius(domain);
    if (!(i0 > 0.0)) fail(ErrorCode::InvalidArgument, "i0 must be positive");
    if (i0 > nir)
        fail(ErrorCode::BeyondInjectivityRadius, "i0 = " + std::to_string(i0) + " > nir = " + std::to_string(nir));
    const double r = R ? *R : domain.scale();
    if (!(i0 < r)) fail(ErrorCode::InvalidArgument, "offset family needs i0 < R");
    return {FamilyKind::DistanceOffset, domain, r, r - i0};
}

PotentialSample homothetic_potential_at(const LevelFamily& fam, double t, double theta) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "homothetic potential is singular at the origin");
    const RadialSample p = fam.domain.radial(theta);
    const double R = fam.R, R2 = R * R, R4 = R2 * R2;
    const double F = p.r, F1 = p.dr, F2 = p.d2r;
    const double F_2 = F * F, F_3 = F_2 * F, F_4 = F_2 * F_2;
    const double h = 1.0 / F, h1 = -F1 / F_2, h2 = -F2 / F_2 + 2.0 * F1 * F1 / F_3;
    const double g = 1.0 / F_2, g1 = -2.0 * F1 / F_3, g2 = -2.0 * F2 / F_3 + 6.0 * F1 * F1 / F_4;

    PotentialSample s;
    s.b = R * t * h;
    s.f = 0.25 * s.b * s.b;
    const double q = 0.25 * R2 * g - 0.25 * R4 * g * g - R4 * g1 * g1 / 16.0;
    const double q1 = 0.25 * R2 * g1 - 0.5 * R4 * g * g1 - 0.125 * R4 * g1 * g2;
    s.S = t * t * q;

    const Mat2 Q = frame(theta);
    s.grad_b = Q * Vec2(R * h, R * h1);
    s.grad_norm = R * std::sqrt(h * h + h1 * h1);
    s.grad_S = Q * Vec2(2.0 * t * q, t * q1);

    Mat2 hf;
    hf << 0.5 * R2 * g, 0.25 * R2 * g1, 0.25 * R2 * g1, 0.25 * R2 * g2 + 0.5 * R2 * g;
    const Mat2 Tp = 0.5 * Mat2::Identity() - hf;
    s.T = Q * Tp * Q.transpose();
    s.trace_T = Tp.trace();
    s.norm_T = Tp.norm();
    Mat2 hb = Mat2::Zero();
    hb(1, 1) = R * (h2 + h) / t;
    s.hess_b = Q * hb * Q.transpose();
    return s;
}

PotentialSample offset_potential_at(const LevelFamily& fam, double rho, double theta) {
    const DomainSpec& d = fam.domain;
    const double k0 = d.boundary_curvature(theta);
    const double H = k0 / (1.0 - k0 * rho);
    const Vec2 tau = d.boundary_tangent(theta).normalized();
    const Vec2 outward(tau.y(), -tau.x());

    PotentialSample s;
    s.b = fam.R - rho;
    s.f = 0.25 * s.b * s.b;
    s.grad_b = outward;
    s.grad_norm = 1.0;
    s.S = 0.0;
    s.grad_S = Vec2::Zero();
    const Mat2 tt = tau * tau.transpose();
    const double t_tt = 0.5 - 0.5 * s.b * H;
    s.T = t_tt * tt;
    s.trace_T = t_tt;
    s.norm_T = std::abs(t_tt);
    s.hess_b = H * tt;
    return s;
}

PotentialSample potential_eval_unchecked(const LevelFamily& fam, const Vec2& x) {
    if (fam.kind == FamilyKind::Homothetic) return homothetic_potential_at(fam, x.norm(), std::atan2(x.y(), x.x()));
    const DomainSpec::Foot foot = fam.domain.distance_to_boundary(x);
    const double rho = fam.domain.contains(x) ? foot.distance : -foot.distance;
    return offset_potential_at(fam, rho, foot.theta);
}

PotentialSample potential_eval(const LevelFamily& fam, const Vec2& x) {
    double b;
    if (fam.kind == FamilyKind::Homothetic) {
        const double t = x.norm();
        if (t == 0.0) fail(ErrorCode::OutOfBand, "origin is outside every homothetic band");
        b = fam.R * t / fam.domain.radial(std::atan2(x.y(), x.x())).r;
    } else {
        const DomainSpec::Foot foot = fam.domain.distance_to_boundary(x);
        const double rho = fam.domain.contains(x) ? foot.distance : -foot.distance;
        b = fam.R - rho;
        if (b > fam.R0 && b < fam.R) return offset_potential_at(fam, rho, foot.theta);
    }
    if (!(b > fam.R0 && b < fam.R))
        fail(ErrorCode::OutOfBand, "b = " + std::to_string(b) + " outside (" + std::to_string(fam.R0) + ", " +
                                       std::to_string(fam.R) + ")");
    return potential_eval_unchecked(fam, x);
}

}  // namespace steklab
