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
#include <array>
#include <cmath>
#include <limits>

#include "steklab/errors.hpp"
#include "steklab/frequency.hpp"
#include "steklab/kernels.hpp"

namespace steklab {

namespace {

// Polygon vertex in barycentric coordinates of the parent triangle.
struct PVert {
    std::array<double, 3> l;
    double b;
};

constexpr int kMaxVerts = 8;

// Sutherland-Hodgman against the half plane b <= level (below) or b >= level.
int clip(const PVert* in, int n, PVert* out, double level, bool below) {
    int m = 0;
    for (int i = 0; i < n; ++i) {
        const PVert& p = in[i];
        const PVert& q = in[(i + 1) % n];
        const bool pin = below ? p.b <= level : p.b >= level;
        const bool qin = below ? q.b <= level : q.b >= level;
        if (pin) out[m++] = p;
        if (pin != qin) {
            const double s = (level - p.b) / (q.b - p.b);
            PVert x;
            for (int k = 0; k < 3; ++k) x.l[k] = p.l[k] + s * (q.l[k] - p.l[k]);
            x.b = level;
            out[m++] = x;
        }
    }
    return m;
}

// Degree-4 rule on the reference triangle: (l0, l1, l2, weight), weights sum to 1.
struct QPoint {
    double l[3];
    double w;
};

constexpr double kA1 = 0.445948490915965, kW1 = 0.223381589678011;
constexpr double kA2 = 0.091576213509771, kW2 = 0.109951743655322;
constexpr QPoint kRule[6] = {
    {{kA1, kA1, 1.0 - 2.0 * kA1}, kW1}, {{kA1, 1.0 - 2.0 * kA1, kA1}, kW1}, {{1.0 - 2.0 * kA1, kA1, kA1}, kW1},
    {{kA2, kA2, 1.0 - 2.0 * kA2}, kW2}, {{kA2, 1.0 - 2.0 * kA2, kA2}, kW2}, {{1.0 - 2.0 * kA2, kA2, kA2}, kW2},
};

double polygon_fraction(const PVert* v, int n) {
    // Area in barycentric coordinates relative to the parent (which has area 1/2 there).
    double twice = 0.0;
    for (int i = 0; i < n; ++i) {
        const PVert& p = v[i];
        const PVert& q = v[(i + 1) % n];
        twice += p.l[1] * q.l[2] - q.l[1] * p.l[2];
    }
    return std::abs(twice);
}

}  // namespace

double FrequencyEvaluator::clipped_integral(const std::vector<double>& u, double r1, double r2, bool energy) const {
    if (static_cast<int>(u.size()) != mesh_->n_nodes()) fail(ErrorCode::InvalidArgument, "field size mismatch");
    const std::size_t nt = mesh_->triangles.size();
    std::vector<double> g2;
    if (energy) {
        std::vector<double> uv[3];
        for (int k = 0; k < 3; ++k) {
            uv[k].resize(nt);
            for (std::size_t t = 0; t < nt; ++t) uv[k][t] = u[mesh_->triangles[t][k]];
        }
        g2.resize(nt);
        const double* gx[3] = {gx_[0].data(), gx_[1].data(), gx_[2].data()};
        const double* gy[3] = {gy_[0].data(), gy_[1].data(), gy_[2].data()};
        const double* up[3] = {uv[0].data(), uv[1].data(), uv[2].data()};
        kernels::active().gradient_square(gx, gy, up, nt, g2.data());
    }

    const bool homothetic = family_.kind == FamilyKind::Homothetic;
    auto grad_b_sq = [&](const Vec2& x) {
        if (!homothetic) return 1.0;
        const RadialSample rs = family_.domain.radial(std::atan2(x.y(), x.x()));
        const double p2 = rs.r * rs.r;
        return family_.R * family_.R * (p2 + rs.dr * rs.dr) / (p2 * p2);
    };

    double acc = 0.0;
    PVert buf_a[kMaxVerts], buf_b[kMaxVerts];
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tri = mesh_->triangles[t];
        const double b0 = b_[tri[0]], b1 = b_[tri[1]], b2 = b_[tri[2]];
        const double lo = std::min({b0, b1, b2}), hi = std::max({b0, b1, b2});
        if (hi <= r1 || lo >= r2) continue;

        int n = 3;
        buf_a[0] = {{1.0, 0.0, 0.0}, b0};
        buf_a[1] = {{0.0, 1.0, 0.0}, b1};
        buf_a[2] = {{0.0, 0.0, 1.0}, b2};
        PVert* poly = buf_a;
        if (hi > r2) {
            n = clip(poly, n, buf_b, r2, true);
            poly = buf_b;
        }
        if (lo < r1 && n >= 3) {
            PVert* dst = poly == buf_a ? buf_b : buf_a;
            n = clip(poly, n, dst, r1, false);
            poly = dst;
        }
        if (n < 3) continue;

        if (energy) {
            acc += area_[t] * polygon_fraction(poly, n) * g2[t];
            continue;
        }
        const double u0 = u[tri[0]], u1 = u[tri[1]], u2 = u[tri[2]];
        const Vec2& x0 = mesh_->nodes[tri[0]];
        const Vec2& x1 = mesh_->nodes[tri[1]];
        const Vec2& x2 = mesh_->nodes[tri[2]];
        for (int i = 1; i + 1 < n; ++i) {
            const PVert* sub[3] = {&poly[0], &poly[i], &poly[i + 1]};
            const PVert fan[3] = {*sub[0], *sub[1], *sub[2]};
            const double frac = polygon_fraction(fan, 3);
            if (frac == 0.0) continue;
            double s = 0.0;
            for (const QPoint& q : kRule) {
                double l[3] = {0.0, 0.0, 0.0};
                for (int v = 0; v < 3; ++v)
                    for (int k = 0; k < 3; ++k) l[k] += q.l[v] * sub[v]->l[k];
                const double uv = l[0] * u0 + l[1] * u1 + l[2] * u2;
                const Vec2 x = l[0] * x0 + l[1] * x1 + l[2] * x2;
                s += q.w * uv * uv * grad_b_sq(x);
            }
            acc += area_[t] * frac * s;
        }
    }
    return acc;
}

double FrequencyEvaluator::D(const std::vector<double>& u, double r) const {
    check_band(r, "D");
    return clipped_integral(u, -std::numeric_limits<double>::infinity(), r, true);
}

double FrequencyEvaluator::J(const std::vector<double>& u, double r1, double r2) const {
    if (!(r1 < r2)) fail(ErrorCode::InvalidArgument, "J needs r1 < r2");
    if (r1 < family_.R0 * (1.0 - 1e-12)) fail(ErrorCode::OutOfBand, "J: r1 below R0");
    check_band(r2, "J");
    return clipped_integral(u, r1, r2, false);
}

}  // namespace steklab
