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

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <memory>
#include <vector>

#include "steklab/mesh.hpp"

namespace steklab {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// P1 stiffness matrix of one triangle.
Eigen::Matrix3d element_stiffness(const Vec2& a, const Vec2& b, const Vec2& c);

/// Global P1 stiffness, nodes in mesh order (boundary last).
SparseMatrix assemble_stiffness(const Mesh& mesh);

/// 1D P1 mass on the boundary loop, as an n_nodes x n_nodes matrix supported
/// on boundary nodes. Uses only nodes and boundary_edges.
SparseMatrix assemble_boundary_mass(const Mesh& mesh);

struct BoundaryOperator {
    int boundary_dim = 0;
    Eigen::MatrixXd dtn;   // symmetrized Schur complement
    Eigen::MatrixXd mass;  // boundary block of the boundary mass
    double asymmetry = 0;  // max |dtn - dtn^T| before symmetrization
    double kernel_residual = 0;  // max |dtn * 1|
};

/// Harmonic extension with a single factorization of the interior block.
class HarmonicExtender {
public:
    explicit HarmonicExtender(const Mesh& mesh);
    HarmonicExtender(const Mesh& mesh, const SparseMatrix& stiffness);

    int n_interior() const { return n_interior_; }
    int n_boundary() const { return n_boundary_; }

    /// Full nodal field whose boundary values are `boundary_values`.
    Eigen::VectorXd extend(const Eigen::VectorXd& boundary_values) const;

    /// ||K_ii u_i + K_ib u_b|| / ||K_ib u_b|| for a full nodal field.
    double residual(const Eigen::VectorXd& field) const;

    BoundaryOperator dtn() const;

    const SparseMatrix& stiffness() const { return K_; }

private:
    void factor();

    int n_interior_ = 0;
    int n_boundary_ = 0;
    SparseMatrix K_;
    SparseMatrix Kii_, Kib_;
    Eigen::MatrixXd Kbb_;
    Eigen::MatrixXd Mbb_;
    std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> solver_;
};

BoundaryOperator dtn_operator(const Mesh& mesh);

/// Nodal harmonic extension of boundary data indexed by boundary node order.
std::vector<double> harmonic_extend(const Mesh& mesh, const std::vector<double>& boundary_values);

/// Dirichlet energy u^T K u.
double dirichlet_energy(const SparseMatrix& stiffness, const Eigen::VectorXd& u);

}  // namespace steklab
