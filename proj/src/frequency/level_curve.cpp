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

#include "steklab/errors.hpp"
#include "steklab/frequency.hpp"

namespace steklab {

LevelCurve trace_level_curve(const LevelFamily& fam, double r, int n) {
    if (n < 8) fail(ErrorCode::InvalidArgument, "level curve needs at least 8 samples");
    if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "level value must be positive");
    LevelCurve c;
    c.r = r;
    c.points.resize(n);
    c.weights.resize(n);
    c.potential.resize(n);
    const double dth = 2.0 * kPi / n;
    const DomainSpec& dom = fam.domain;
    for (int j = 0; j < n; ++j) {
        const double th = dth * j;
        const RadialSample rs = dom.radial(th);
        const double speed = std::hypot(rs.r, rs.dr);
        if (fam.kind == FamilyKind::Homothetic) {
            const double s = r / fam.R;
            const double t = s * rs.r;
            c.points[j] = Vec2(t * std::cos(th), t * std::sin(th));
            c.weights[j] = s * speed * dth;
            c.potential[j] = homothetic_potential_at(fam, t, th);
        } else {
            const double rho = fam.R - r;
            const double k0 = dom.boundary_curvature(th);
            const double stretch = 1.0 - k0 * rho;
            if (stretch <= 0.0)
                fail(ErrorCode::BeyondInjectivityRadius, "offset depth " + std::to_string(rho) + " reaches a focal point");
            c.points[j] = dom.boundary_point(th) + rho * dom.inward_normal(th);
            c.weights[j] = speed * stretch * dth;
            c.potential[j] = offset_potential_at(fam, rho, th);
        }
    }
    return c;
}

std::vector<double> level_grid(double lo, double hi, int count) {
    if (count < 2) fail(ErrorCode::InvalidArgument, "level grid needs at least 2 points");
    if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "level grid needs lo < hi");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
    g.back() = hi;
    return g;
}

}  // namespace steklab
