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

#include <string>
#include <vector>

#include "steklab/geometry.hpp"
#include "steklab/mesh.hpp"

namespace steklab {

/// Sampled level curve {b = r} with quadrature weights (arc length times the
/// angular step) and the potential quantities at each node.
struct LevelCurve {
    double r = 0;
    std::vector<Vec2> points;
    std::vector<double> weights;
    std::vector<PotentialSample> potential;
};

/// Level curve of a family traced analytically (homothetic) or by normal
/// offsetting of the boundary (distance family), sampled at n angles.
LevelCurve trace_level_curve(const LevelFamily& family, double r, int n);

/// Evaluates I, D, U and J of nodal P1 fields on one mesh for one family.
/// Construction samples b at the nodes once; evaluation is read-only.
class FrequencyEvaluator {
public:
    FrequencyEvaluator(const Mesh& mesh, const LevelFamily& family, int n_quad = 0);

    const Mesh& mesh() const { return *mesh_; }
    const LevelFamily& family() const { return family_; }
    int n_quad() const { return n_quad_; }
    double gamma0() const { return gamma0_; }
    const std::vector<double>& nodal_b() const { return b_; }

    /// r^(1-n) * integral over {b = r} of u^2 |grad b|.
    double I(const std::vector<double>& u, double r) const;
    /// r^(2-n) * integral over {b < r} of |grad u|^2, by clipping against the P1 interpolant of b.
    double D(const std::vector<double>& u, double r) const;
    /// r^(2-n) * integral over {b = r} of u du/dn, with du/dn from a recovered nodal gradient.
    double D_flux(const std::vector<double>& u, double r) const;
    /// D / I. Throws DegenerateI when I <= 0.
    double U(const std::vector<double>& u, double r) const;
    /// Integral over {r1 < b < r2} of u^2 |grad b|^2.
    double J(const std::vector<double>& u, double r1, double r2) const;
    /// Right-hand side of the I' identity:
    /// 2D/r + r^-n * integral over {b = r} of (4nS/r^2 - 2 tr T)(1 - 4S/r^2)^-1 u^2 |grad b|.
    double I_derivative_formula(const std::vector<double>& u, double r) const;
    /// Sup over the band of |(4nS/b^2 - 2 tr T)(1 - 4S/b^2)^-1|, sampled on level curves.
    double C2(int levels = 32) const;

    /// P1 value of u at x.
    double interpolate(const std::vector<double>& u, const Vec2& x) const;

private:
    void check_band(double r, const char* what) const;
    LevelCurve curve(double r) const;
    double clipped_integral(const std::vector<double>& u, double r1, double r2, bool energy) const;

    const Mesh* mesh_;
    LevelFamily family_;
    int n_quad_;
    MeshLocator locator_;
    std::vector<double> b_;
    std::vector<double> area_;
    std::vector<double> gx_[3], gy_[3];
    double gamma0_ = 0;
};

struct FrequencyCurve {
    std::vector<double> r_grid;
    std::vector<double> I_vals, D_vals, U_vals;
    FamilyKind family = FamilyKind::Homothetic;
    std::string field_ref;
};

FrequencyCurve frequency_curve(const FrequencyEvaluator& ev, const std::vector<double>& u,
                               const std::vector<double>& r_grid, const std::string& field_ref = {});

/// Evenly spaced grid of `count` regular values in [lo, hi].
std::vector<double> level_grid(double lo, double hi, int count);

struct IDerivativeCheck {
    double lhs;  // difference quotient of I
    double rhs;  // identity
    double residual;  // |lhs - rhs| / |rhs|
    double central;  // plain central difference with the given step
};

/// With richardson set, lhs = (4 c(step) - c(2 step)) / 3 where c is the central
/// difference, and r +- 2 step must lie in (R0, R]. Otherwise lhs = c(step).
IDerivativeCheck check_I_derivative(const FrequencyEvaluator& ev, const std::vector<double>& u, double r,
                                    double step, bool richardson = true);

struct BoundaryIdentity {
    double r;        // evaluation level R (1 - eps)
    double U;        // U(r)
    double R_sigma;  // R * sigma
    double gap;      // |U - R sigma| / (R sigma)
    double flux_bound;  // sigma R / inf |grad b|
};

/// eps defaults to twice the outermost ring width relative to R.
BoundaryIdentity boundary_frequency_identity(const FrequencyEvaluator& ev, const std::vector<double>& u,
                                             double sigma, double eps = 0.0);

struct GrowthEntry {
    std::string name;
    double worst_margin;  // >= 1 means the inequality holds without slack
    bool pass;
    int checked;
};

struct GrowthReport {
    std::vector<GrowthEntry> entries;
    bool pass = true;
};

/// Growth inequalities on a frequency curve. For the distance family: the
/// U-growth bound, both I-growth bounds and the monotonicity of e^{2(C_H+C_II) r} U.
/// For the homothetic family only the I lower bound with C2 is asserted; the
/// other estimates carry an unknown constant and are not reported.
/// U(R) is taken as R sigma, its value on eigenfields of eigenvalue sigma.
GrowthReport growth_checks(const FrequencyCurve& curve, const GeometryConstants& gc, double sigma, double R,
                           double C2 = 0.0, double slack = 1.05);

struct DoublingCheck {
    double lambda;
    double lhs;     // J(R / lambda^3, R)
    double factor;  // bracket multiplying J(R / lambda^2, R / lambda)
    double rhs;
    double margin;  // rhs / lhs
    bool pass;
};

/// Doubling estimate on annuli with lambda = 1 + 1/((alpha^(-1/3) - 1)^(-1) + R sigma), alpha = R0/R.
/// Distance family: the explicit bracket with C_H, C_II. Homothetic family:
/// lambda^(C2 - n) + 1 + lambda^(n + C2 + C3) with C3 = 2 U_sup, U_sup being a
/// measured sup of U over the band. Passes when rhs * slack >= lhs.
DoublingCheck doubling_check(const FrequencyEvaluator& ev, const std::vector<double>& u, const GeometryConstants& gc,
                             double sigma, double C2 = 0.0, double U_sup = 0.0, double slack = 1.05);

}  // namespace steklab
