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
#include "steklab/util.hpp"

namespace steklab {

namespace {

constexpr int kCurvRho = 64;
constexpr int kCurvTheta = 512;
constexpr int kBallAngles = 16;
constexpr int kBallDepths = 4;
constexpr int kBallRadii = 8;
constexpr int kBallCells = 316;
constexpr int kBandLevels = 32;
constexpr int kBandAngles = 256;
constexpr int kRadiusTable = 16384;

// Boundary radius on a fine periodic table with linear interpolation, for
// bulk inside tests.
class RadiusTable {
public:
    explicit RadiusTable(const DomainSpec& d) : r_(kRadiusTable + 1) {
        std::vector<double> th(kRadiusTable), dr, d2r;
        for (int i = 0; i < kRadiusTable; ++i) th[i] = 2.0 * kPi * i / kRadiusTable;
        std::vector<double> r;
        d.radial(th, r, dr, d2r);
        std::copy(r.begin(), r.end(), r_.begin());
        r_[kRadiusTable] = r_[0];
    }
    bool inside(double x, double y) const {
        const double t2 = x * x + y * y;
        double th = std::atan2(y, x);
        if (th < 0.0) th += 2.0 * kPi;
        const double u = th * (kRadiusTable / (2.0 * kPi));
        const int i = std::min(static_cast<int>(u), kRadiusTable - 1);
        const double w = u - i;
        const double r = (1.0 - w) * r_[i] + w * r_[i + 1];
        return t2 < r * r;
    }

private:
    std::vector<double> r_;
};

double ball_ratio(const DomainSpec& d, const RadiusTable& table, const Vec2& c, double s) {
    if (d.contains(c) && d.distance_to_boundary(c).distance >= s) return kPi;
    const double h = 2.0 * s / kBallCells;
    long count = 0;
    for (int i = 0; i < kBallCells; ++i) {
        const double dx = -s + (i + 0.5) * h;
        for (int j = 0; j < kBallCells; ++j) {
            const double dy = -s + (j + 0.5) * h;
            if (dx * dx + dy * dy >= s * s) continue;
            if (table.inside(c.x() + dx, c.y() + dy)) ++count;
        }
    }
    return static_cast<double>(count) * h * h / (s * s);
}

}  // namespace

double default_i0(const DomainSpec& domain) { return 0.9 * normal_injectivity_radius(domain); }

GeometryConstants geometry_constants(const DomainSpec& domain, double i0, double sigma, const LevelFamily& family) {
    const double nir = normal_injectivity_radius(domain);
    if (!(i0 > 0.0)) fail(ErrorCode::InvalidArgument, "i0 must be positive");
    if (i0 > nir)
        fail(ErrorCode::BeyondInjectivityRadius, "i0 = " + std::to_string(i0) + " > nir = " + std::to_string(nir));
    if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be nonnegative");

    GeometryConstants gc;
    gc.nir = nir;
    gc.i0 = i0;
    gc.K = 0.0;

    std::vector<double> kappa0(kCurvTheta);
    for (int j = 0; j < kCurvTheta; ++j) kappa0[j] = domain.boundary_curvature(2.0 * kPi * j / kCurvTheta);
    double ch = 0.0;
    for (int i = 0; i < kCurvRho; ++i) {
        const double rho = i0 * i / (kCurvRho - 1);
        for (double k0 : kappa0) ch = std::max(ch, std::abs(k0 / (1.0 - k0 * rho)));
    }
    gc.C_H = ch;
    gc.C_II = ch;

    const RadiusTable table(domain);
    const double s_max = sigma > 0.0 ? std::min(0.5 * i0, 0.5 / sigma) : 0.5 * i0;
    double v0 = std::numeric_limits<double>::infinity();
    for (int a = 0; a < kBallAngles; ++a) {
        const double theta = 2.0 * kPi * a / kBallAngles;
        for (int k = 0; k < kBallDepths; ++k) {
            const Vec2 c = offset_point(domain, i0 * k / kBallDepths, theta);
            for (int j = 1; j <= kBallRadii; ++j) {
                const double s = s_max * (j - 0.5) / kBallRadii;
                v0 = std::min(v0, ball_ratio(domain, table, c, s));
            }
        }
    }
    gc.v0 = v0;

    // Band sampling: |grad b| extremes and the regularity envelope
    // Q(r) = sup_{b<r} (|grad S||grad b| + |S hess b| + |T|).
    const double R = family.R, R0 = family.R0;
    double g0 = std::numeric_limits<double>::infinity(), g1 = 0.0;
    std::vector<double> level(kBandLevels), qsup(kBandLevels);
    double running = 0.0;
    for (int i = 0; i < kBandLevels; ++i) {
        const double r = R0 + (R - R0) * (i + 0.5) / kBandLevels;
        level[i] = r;
        for (int j = 0; j < kBandAngles; ++j) {
            const double theta = 2.0 * kPi * j / kBandAngles;
            PotentialSample p;
            if (family.kind == FamilyKind::Homothetic)
                p = homothetic_potential_at(family, r * family.domain.radial(theta).r / R, theta);
            else
                p = offset_potential_at(family, R - r, theta);
            g0 = std::min(g0, p.grad_norm);
            g1 = std::max(g1, p.grad_norm);
            const double q = p.grad_S.norm() * p.grad_norm + std::abs(p.S) * p.hess_b.norm() + p.norm_T;
            running = std::max(running, q);
        }
        qsup[i] = running;
    }
    gc.gamma0 = g0;
    gc.gamma1 = g1;

    auto fit = [&](double beta) {
        double k = 0.0;
        for (int i = 0; i < kBandLevels; ++i) k = std::max(k, qsup[i] * std::pow(R - level[i], beta));
        return k;
    };
    std::vector<double> sorted = qsup;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[kBandLevels / 2];
    gc.beta = 0.0;
    gc.kappa = fit(0.0);
    if (gc.kappa > 10.0 * median) {
        for (double beta : {0.25, 0.5, 0.75}) {
            const double k = fit(beta);
            gc.beta = beta;
            gc.kappa = k;
            if (k <= 10.0 * median) break;
        }
    }
    return gc;
}

std::string constants_csv_header() { return "domain_hash,i0,C_H,C_II,nir,v0,K,gamma0,gamma1,kappa,beta"; }

std::string constants_csv_row(const DomainSpec& domain, const GeometryConstants& gc) {
    std::string row = domain.hash();
    for (double v : {gc.i0, gc.C_H, gc.C_II, gc.nir, gc.v0, gc.K, gc.gamma0, gc.gamma1, gc.kappa, gc.beta}) {
        row += ',';
        row += fmt17(v);
    }
    return row;
}

}  // namespace steklab
