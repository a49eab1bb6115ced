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
#include "steklab/frequency.hpp"

namespace steklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tracker {
    GrowthEntry e;
    double slack;

    Tracker(std::string name, double s) : e{std::move(name), kInf, true, 0}, slack(s) {}

    // log_margin = log(bound / value) for upper bounds, log(value / bound) for lower bounds.
    void add(double log_margin) {
        const double m = std::isnan(log_margin) ? 0.0 : std::exp(log_margin);
        e.worst_margin = std::min(e.worst_margin, m);
        ++e.checked;
    }

    GrowthEntry done() {
        e.pass = e.checked > 0 && e.worst_margin >= 1.0 / slack;
        return e;
    }
};

// log(exp(a) + exp(b) + exp(c)) without overflow.
double log_sum3(double a, double b, double c) {
    const double m = std::max({a, b, c});
    if (!std::isfinite(m)) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

}  // namespace

GrowthReport growth_checks(const FrequencyCurve& curve, const GeometryConstants& gc, double sigma, double R,
                           double C2, double slack) {
    const std::size_t n = curve.r_grid.size();
    if (n < 2 || curve.I_vals.size() != n || curve.U_vals.size() != n)
        fail(ErrorCode::InvalidArgument, "frequency curve needs at least two consistent samples");
    if (!(slack >= 1.0)) fail(ErrorCode::InvalidArgument, "slack must be at least 1");
    const auto& r = curve.r_grid;
    const auto& I = curve.I_vals;
    const auto& U = curve.U_vals;
    GrowthReport rep;

    if (curve.family == FamilyKind::Homothetic) {
        Tracker lower("I_lower_C2", slack);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                // r[b] > r[a]: I(r1)/I(r2) >= (r1/r2)^(-C2) with r1 = r[b], r2 = r[a].
                const double lr = std::log(r[b] / r[a]);
                lower.add(std::log(I[b] / I[a]) + C2 * lr);
            }
        rep.entries.push_back(lower.done());
    } else {
        const double U_R = R * sigma;
        const double c = gc.C_H + gc.C_II;
        Tracker ug("U_growth", slack), il("I_lower", slack), iu("I_upper", slack), mono("U_monotone", slack);
        for (std::size_t a = 0; a < n; ++a) {
            ug.add(std::log(U_R) + 2.0 * c * (R - r[a]) - std::log(U[a]));
            for (std::size_t b = a + 1; b < n; ++b) {
                const double r1 = r[b], r2 = r[a];
                const double lr = std::log(r1 / r2);
                const double li = std::log(I[b] / I[a]);
                il.add(li - (-gc.C_H * (r1 - r2) - lr));
                const double expo = 2.0 * U_R * std::exp(2.0 * c * (R - r2)) - 1.0;
                iu.add(expo * lr + gc.C_H * (r1 - r2) - li);
                mono.add(2.0 * c * (r1 - r2) + std::log(U[b] / U[a]));
            }
        }
        rep.entries.push_back(ug.done());
        rep.entries.push_back(il.done());
        rep.entries.push_back(iu.done());
        rep.entries.push_back(mono.done());
    }
    for (const GrowthEntry& e : rep.entries) rep.pass = rep.pass && e.pass;
    return rep;
}

DoublingCheck doubling_check(const FrequencyEvaluator& ev, const std::vector<double>& u, const GeometryConstants& gc,
                             double sigma, double C2, double U_sup, double slack) {
    const LevelFamily& fam = ev.family();
    const double R = fam.R;
    const double alpha = fam.R0 / R;
    DoublingCheck d;
    d.lambda = 1.0 + 1.0 / (1.0 / (std::pow(alpha, -1.0 / 3.0) - 1.0) + R * sigma);
    const double l = d.lambda, ll = std::log(l);
    d.lhs = ev.J(u, R / (l * l * l), R);
    const double base = ev.J(u, R / (l * l), R / l);

    double log_factor;
    if (fam.kind == FamilyKind::DistanceOffset) {
        const double c = gc.C_H + gc.C_II;
        const double h = gc.C_H * R * (l - 1.0);
        const double expo = 2.0 * sigma * R * std::exp(2.0 * c * R * (1.0 - 1.0 / (l * l * l))) + 1.0;
        log_factor = log_sum3(-ll + h, 0.0, expo * ll + h);
    } else {
        const int n = 2;
        log_factor = log_sum3((C2 - n) * ll, 0.0, (n + C2 + 2.0 * U_sup) * ll);
    }
    d.factor = std::exp(log_factor);
    d.rhs = d.factor * base;
    const double log_margin = log_factor + std::log(base) - std::log(d.lhs);
    d.margin = std::isnan(log_margin) ? 0.0 : std::exp(log_margin);
    d.pass = d.margin * slack >= 1.0;
    return d;
}

}  // namespace steklab
