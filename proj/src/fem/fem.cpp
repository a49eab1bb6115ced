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

#include "steklab/errors.hpp"
#include "steklab/fem.hpp"
#include "steklab/kernels.hpp"

namespace steklab {

Eigen::Matrix3d element_stiffness(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double twice = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
    if (!(twice > 0.0)) fail(ErrorCode::DegenerateTriangle, "signed area " + std::to_string(0.5 * twice));
    Eigen::Matrix<double, 2, 3> g;
    g << b.y() - c.y(), c.y() - a.y(), a.y() - b.y(), c.x() - b.x(), a.x() - c.x(), b.x() - a.x();
    g /= twice;
    return 0.5 * twice * g.transpose() * g;
}

SparseMatrix assemble_stiffness(const Mesh& mesh) {
    const std::size_t nt = mesh.triangles.size();
    std::vector<double> x[3], y[3], gx[3], gy[3], area(nt);
    for (int k = 0; k < 3; ++k) {
        x[k].resize(nt);
        y[k].resize(nt);
        gx[k].resize(nt);
        gy[k].resize(nt);
    }
    for (std::size_t t = 0; t < nt; ++t)
        for (int k = 0; k < 3; ++k) {
            x[k][t] = mesh.nodes[mesh.triangles[t][k]].x();
            y[k][t] = mesh.nodes[mesh.triangles[t][k]].y();
        }
    kernels::TriangleSoA soa{{x[0].data(), x[1].data(), x[2].data()}, {y[0].data(), y[1].data(), y[2].data()}, nt};
    kernels::TriangleGradients out{area.data(),
                                   {gx[0].data(), gx[1].data(), gx[2].data()},
                                   {gy[0].data(), gy[1].data(), gy[2].data()}};
    kernels::active().triangle_geometry(soa, out);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(9 * nt);
    for (std::size_t t = 0; t < nt; ++t) {
        if (!(area[t] > 0.0))
            fail(ErrorCode::DegenerateTriangle,
                 "triangle " + std::to_string(t) + " has signed area " + std::to_string(area[t]));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                trip.emplace_back(mesh.triangles[t][a], mesh.triangles[t][b],
                                  area[t] * (gx[a][t] * gx[b][t] + gy[a][t] * gy[b][t]));
    }
    SparseMatrix K(mesh.n_nodes(), mesh.n_nodes());
    K.setFromTriplets(trip.begin(), trip.end());
    return K;
}

SparseMatrix assemble_boundary_mass(const Mesh& mesh) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(4 * mesh.boundary_edges.size());
    for (const auto& e : mesh.boundary_edges) {
        const double l = (mesh.nodes[e[1]] - mesh.nodes[e[0]]).norm();
        trip.emplace_back(e[0], e[0], l / 3.0);
        trip.emplace_back(e[1], e[1], l / 3.0);
        trip.emplace_back(e[0], e[1], l / 6.0);
        trip.emplace_back(e[1], e[0], l / 6.0);
    }
    const auto n = static_cast<Eigen::Index>(mesh.nodes.size());
    SparseMatrix M(n, n);
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

HarmonicExtender::HarmonicExtender(const Mesh& mesh) : HarmonicExtender(mesh, assemble_stiffness(mesh)) {}

HarmonicExtender::HarmonicExtender(const Mesh& mesh, const SparseMatrix& stiffness) : K_(stiffness) {
    n_boundary_ = mesh.n_boundary();
    n_interior_ = mesh.n_nodes() - n_boundary_;
    for (const auto& e : mesh.boundary_edges)
        if (e[0] < n_interior_ || e[1] < n_interior_)
            fail(ErrorCode::InvalidArgument, "mesh is not in boundary-last order");
    Kii_ = K_.topLeftCorner(n_interior_, n_interior_);
    Kib_ = K_.topRightCorner(n_interior_, n_boundary_);
    Kbb_ = Eigen::MatrixXd(K_.bottomRightCorner(n_boundary_, n_boundary_));
    const SparseMatrix M = assemble_boundary_mass(mesh);
    Mbb_ = Eigen::MatrixXd(M.bottomRightCorner(n_boundary_, n_boundary_));
    factor();
}

void HarmonicExtender::factor() {
    solver_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>();
    solver_->compute(Kii_);
    if (solver_->info() != Eigen::Success) fail(ErrorCode::SingularInterior, "interior factorization failed");
    const Eigen::VectorXd d = solver_->vectorD();
    if (d.size() > 0 && !(d.minCoeff() > 0.0))
        fail(ErrorCode::SingularInterior, "interior block is not positive definite");
}

Eigen::VectorXd HarmonicExtender::extend(const Eigen::VectorXd& ub) const {
    if (ub.size() != n_boundary_) fail(ErrorCode::InvalidArgument, "boundary data has the wrong length");
    Eigen::VectorXd u(n_interior_ + n_boundary_);
    const Eigen::VectorXd rhs = -(Kib_ * ub);
    u.head(n_interior_) = solver_->solve(rhs);
    u.tail(n_boundary_) = ub;
    return u;
}

double HarmonicExtender::residual(const Eigen::VectorXd& u) const {
    const Eigen::VectorXd ub = u.tail(n_boundary_);
    const Eigen::VectorXd kb = Kib_ * ub;
    const Eigen::VectorXd r = Kii_ * u.head(n_interior_) + kb;
    const double scale = kb.norm();
    return scale > 0.0 ? r.norm() / scale : r.norm();
}

BoundaryOperator HarmonicExtender::dtn() const {
    constexpr Eigen::Index kBlock = 64;
    BoundaryOperator op;
    op.boundary_dim = n_boundary_;
    op.dtn = Kbb_;
    const SparseMatrix Kbi = Kib_.transpose();
    for (Eigen::Index c0 = 0; c0 < n_boundary_; c0 += kBlock) {
        const Eigen::Index w = std::min<Eigen::Index>(kBlock, n_boundary_ - c0);
        const Eigen::MatrixXd rhs = Eigen::MatrixXd(Kib_.middleCols(c0, w));
        const Eigen::MatrixXd X = solver_->solve(rhs);
        op.dtn.middleCols(c0, w) -= Kbi * X;
    }
    op.asymmetry = (op.dtn - op.dtn.transpose()).cwiseAbs().maxCoeff();
    op.dtn = 0.5 * (op.dtn + op.dtn.transpose()).eval();
    op.kernel_residual = (op.dtn * Eigen::VectorXd::Ones(n_boundary_)).cwiseAbs().maxCoeff();
    op.mass = Mbb_;
    return op;
}

BoundaryOperator dtn_operator(const Mesh& mesh) { return HarmonicExtender(mesh).dtn(); }

std::vector<double> harmonic_extend(const Mesh& mesh, const std::vector<double>& boundary_values) {
    const HarmonicExtender ext(mesh);
    const Eigen::VectorXd u =
        ext.extend(Eigen::Map<const Eigen::VectorXd>(boundary_values.data(), static_cast<Eigen::Index>(boundary_values.size())));
    return {u.data(), u.data() + u.size()};
}

double dirichlet_energy(const SparseMatrix& stiffness, const Eigen::VectorXd& u) { return u.dot(stiffness * u); }

}  // namespace steklab
