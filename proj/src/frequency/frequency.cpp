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
#include "steklab/kernels.hpp"

namespace steklab {

namespace {

constexpr int kGammaSamples = 4096;

double q_factor(const PotentialSample& p, double r, int n) {
    const double r2 = r * r;
    return (4.0 * n * p.S / r2 - 2.0 * p.trace_T) / (1.0 - 4.0 * p.S / r2);
}

}  // namespace

FrequencyEvaluator::FrequencyEvaluator(const Mesh& mesh, const LevelFamily& family, int n_quad)
    : mesh_(&mesh),
      family_(family),
      n_quad_(n_quad > 0 ? n_quad : family.domain.n_quad()),
      locator_(mesh) {
    const DomainSpec& dom = family_.domain;
    const int nn = mesh.n_nodes();
    b_.resize(nn);
    if (family_.kind == FamilyKind::Homothetic) {
        for (int i = 0; i < nn; ++i) {
            const double t = mesh.node_polar[i].x();
            b_[i] = t == 0.0 ? 0.0 : family_.R * t / dom.radial(mesh.node_polar[i].y()).r;
        }
    } else {
        const int first = mesh.first_boundary();
        for (int i = 0; i < nn; ++i)
            b_[i] = i >= first ? family_.R : family_.R - dom.distance_to_boundary(mesh.nodes[i]).distance;
    }

    const std::size_t nt = mesh.triangles.size();
    std::vector<double> x[3], y[3];
    for (int k = 0; k < 3; ++k) {
        x[k].resize(nt);
        y[k].resize(nt);
        gx_[k].resize(nt);
        gy_[k].resize(nt);
    }
    area_.resize(nt);
    for (std::size_t t = 0; t < nt; ++t)
        for (int k = 0; k < 3; ++k) {
            const Vec2& p = mesh.nodes[mesh.triangles[t][k]];
            x[k][t] = p.x();
            y[k][t] = p.y();
        }
    const kernels::TriangleSoA soa{{x[0].data(), x[1].data(), x[2].data()}, {y[0].data(), y[1].data(), y[2].data()}, nt};
    const kernels::TriangleGradients out{area_.data(),
                                         {gx_[0].data(), gx_[1].data(), gx_[2].data()},
                                         {gy_[0].data(), gy_[1].data(), gy_[2].data()}};
    kernels::active().triangle_geometry(soa, out);
    for (std::size_t t = 0; t < nt; ++t)
        if (!(area_[t] > 0.0)) fail(ErrorCode::DegenerateTriangle, "triangle " + std::to_string(t));

    if (family_.kind == FamilyKind::Homothetic) {
        gamma0_ = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kGammaSamples; ++i) {
            const RadialSample rs = dom.radial(2.0 * kPi * i / kGammaSamples);
            gamma0_ = std::min(gamma0_, family_.R * std::hypot(rs.r, rs.dr) / (rs.r * rs.r));
        }
    } else {
        gamma0_ = 1.0;
    }
}

void FrequencyEvaluator::check_band(double r, const char* what) const {
    const double tol = 1e-12 * family_.R;
    if (!(r > family_.R0 && r <= family_.R + tol))
        fail(ErrorCode::OutOfBand, std::string(what) + ": r = " + std::to_string(r) + " outside (" +
                                       std::to_string(family_.R0) + ", " + std::to_string(family_.R) + "]");
}

LevelCurve FrequencyEvaluator::curve(double r) const {
    LevelCurve c = trace_level_curve(family_, std::min(r, family_.R), n_quad_);
    for (const PotentialSample& p : c.potential)
        if (p.grad_norm < 0.5 * gamma0_)
            fail(ErrorCode::IrregularValue, "|grad b| degenerates on the level " + std::to_string(r));
    return c;
}

double FrequencyEvaluator::interpolate(const std::vector<double>& u, const Vec2& x) const {
    return locator_.interpolate(u, x);
}

double FrequencyEvaluator::I(const std::vector<double>& u, double r) const {
    check_band(r, "I");
    if (static_cast<int>(u.size()) != mesh_->n_nodes()) fail(ErrorCode::InvalidArgument, "field size mismatch");
    const LevelCurve c = curve(r);
    const int n = static_cast<int>(c.points.size());
    std::vector<double> w(n), val(n);
    for (int j = 0; j < n; ++j) {
        w[j] = c.weights[j] * c.potential[j].grad_norm;
        val[j] = locator_.interpolate(u, c.points[j]);
    }
    return kernels::weighted_square_sum(w, val) / r;
}

double FrequencyEvaluator::D_flux(const std::vector<double>& u, double r) const {
    check_band(r, "D_flux");
    if (static_cast<int>(u.size()) != mesh_->n_nodes()) fail(ErrorCode::InvalidArgument, "field size mismatch");
    // Area-weighted nodal average of the elementwise gradients, interpolated P1.
    const int nn = mesh_->n_nodes();
    std::vector<double> gxn(nn, 0.0), gyn(nn, 0.0), wn(nn, 0.0);
    for (std::size_t t = 0; t < mesh_->triangles.size(); ++t) {
        const auto& tri = mesh_->triangles[t];
        double ux = 0.0, uy = 0.0;
        for (int k = 0; k < 3; ++k) {
            ux += u[tri[k]] * gx_[k][t];
            uy += u[tri[k]] * gy_[k][t];
        }
        for (int k = 0; k < 3; ++k) {
            gxn[tri[k]] += area_[t] * ux;
            gyn[tri[k]] += area_[t] * uy;
            wn[tri[k]] += area_[t];
        }
    }
    for (int i = 0; i < nn; ++i) {
        gxn[i] /= wn[i];
        gyn[i] /= wn[i];
    }
    const LevelCurve c = curve(r);
    double acc = 0.0;
    for (std::size_t j = 0; j < c.points.size(); ++j) {
        const MeshLocator::Hit h = locator_.locate(c.points[j]);
        const auto& tri = mesh_->triangles[h.triangle];
        double val = 0.0, ux = 0.0, uy = 0.0;
        for (int k = 0; k < 3; ++k) {
            val += h.bary[k] * u[tri[k]];
            ux += h.bary[k] * gxn[tri[k]];
            uy += h.bary[k] * gyn[tri[k]];
        }
        const PotentialSample& p = c.potential[j];
        acc += c.weights[j] * val * (ux * p.grad_b.x() + uy * p.grad_b.y()) / p.grad_norm;
    }
    return acc;
}

double FrequencyEvaluator::U(const std::vector<double>& u, double r) const {
    const double i = I(u, r);
    if (!(i > 0.0)) fail(ErrorCode::DegenerateI, "I(" + std::to_string(r) + ") = " + std::to_string(i));
    return D(u, r) / i;
}

double FrequencyEvaluator::I_derivative_formula(const std::vector<double>& u, double r) const {
    check_band(r, "I'");
    const int n = 2;
    const LevelCurve c = curve(r);
    double acc = 0.0;
    for (std::size_t j = 0; j < c.points.size(); ++j) {
        const PotentialSample& p = c.potential[j];
        const double val = locator_.interpolate(u, c.points[j]);
        acc += c.weights[j] * q_factor(p, r, n) * val * val * p.grad_norm;
    }
    return 2.0 * D(u, r) / r + acc / (r * r);
}

double FrequencyEvaluator::C2(int levels) const {
    if (levels < 1) fail(ErrorCode::InvalidArgument, "levels must be positive");
    double sup = 0.0;
    for (int i = 1; i <= levels; ++i) {
        const double r = family_.R0 + (family_.R - family_.R0) * i / levels;
        const LevelCurve c = trace_level_curve(family_, r, n_quad_);
        for (const PotentialSample& p : c.potential) sup = std::max(sup, std::abs(q_factor(p, r, 2)));
    }
    return sup;
}

FrequencyCurve frequency_curve(const FrequencyEvaluator& ev, const std::vector<double>& u,
                               const std::vector<double>& r_grid, const std::string& field_ref) {
    FrequencyCurve fc;
    fc.family = ev.family().kind;
    fc.field_ref = field_ref;
    fc.r_grid = r_grid;
    for (double r : r_grid) {
        const double i = ev.I(u, r);
        if (!(i > 0.0)) fail(ErrorCode::DegenerateI, "I(" + std::to_string(r) + ") = " + std::to_string(i));
        const double d = ev.D(u, r);
        fc.I_vals.push_back(i);
        fc.D_vals.push_back(d);
        fc.U_vals.push_back(d / i);
    }
    return fc;
}

IDerivativeCheck check_I_derivative(const FrequencyEvaluator& ev, const std::vector<double>& u, double r,
                                    double step, bool richardson) {
    if (!(step > 0.0)) fail(ErrorCode::InvalidArgument, "step must be positive");
    const double c1 = (ev.I(u, r + step) - ev.I(u, r - step)) / (2.0 * step);
    double lhs = c1;
    if (richardson) {
        const double c2 = (ev.I(u, r + 2.0 * step) - ev.I(u, r - 2.0 * step)) / (4.0 * step);
        lhs = (4.0 * c1 - c2) / 3.0;
    }
    const double rhs = ev.I_derivative_formula(u, r);
    return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs), c1};
}

BoundaryIdentity boundary_frequency_identity(const FrequencyEvaluator& ev, const std::vector<double>& u,
                                             double sigma, double eps) {
    const Mesh& m = ev.mesh();
    if (eps <= 0.0) eps = 2.0 * (1.0 - m.ring_fraction[m.n_radial - 1]);
    const double R = ev.family().R;
    BoundaryIdentity bi;
    bi.r = R * (1.0 - eps);
    bi.U = ev.U(u, bi.r);
    bi.R_sigma = R * sigma;
    bi.gap = std::abs(bi.U - bi.R_sigma) / bi.R_sigma;
    bi.flux_bound = sigma * R / ev.gamma0();
    return bi;
}

}  // namespace steklab
