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
#include <set>

#include "steklab/errors.hpp"
#include "steklab/mesh.hpp"

namespace steklab {

int Mesh::node_index(int ring, int j) const {
    if (ring == 0) return 0;
    const int jj = ((j % n_angular) + n_angular) % n_angular;
    return 1 + (ring - 1) * n_angular + jj;
}

double Mesh::boundary_h() const {
    double h = 0.0;
    for (const auto& e : boundary_edges) h = std::max(h, (nodes[e[1]] - nodes[e[0]]).norm());
    return h;
}

int fan_triangle(const Mesh& mesh, int j) { return ((j % mesh.n_angular) + mesh.n_angular) % mesh.n_angular; }

int quad_triangle(const Mesh& mesh, int ring, int j, int which) {
    const int jj = ((j % mesh.n_angular) + mesh.n_angular) % mesh.n_angular;
    return mesh.n_angular + 2 * ((ring - 1) * mesh.n_angular + jj) + which;
}

Mesh generate_mesh(const DomainSpec& domain, int n_radial, int n_angular, double grading) {
    if (n_radial < 2 || n_angular < 8)
        fail(ErrorCode::ResolutionTooLow, "need n_radial >= 2 and n_angular >= 8, got (" + std::to_string(n_radial) +
                                              ", " + std::to_string(n_angular) + ")");
    if (!(grading >= 1.0)) fail(ErrorCode::InvalidArgument, "grading must be >= 1");

    Mesh m;
    m.n_radial = n_radial;
    m.n_angular = n_angular;
    m.grading = grading;
    m.ring_fraction.assign(n_radial + 1, 0.0);
    if (grading == 1.0) {
        for (int i = 0; i <= n_radial; ++i) m.ring_fraction[i] = static_cast<double>(i) / n_radial;
    } else {
        double total = 0.0, w = 1.0;
        for (int i = 0; i < n_radial; ++i, w /= grading) {
            total += w;
            m.ring_fraction[i + 1] = total;
        }
        for (double& s : m.ring_fraction) s /= total;
    }
    m.ring_fraction[n_radial] = 1.0;

    std::vector<double> theta(n_angular), r, dr, d2r;
    for (int j = 0; j < n_angular; ++j) theta[j] = 2.0 * kPi * j / n_angular;
    domain.radial(theta, r, dr, d2r);

    const int n_nodes = 1 + n_radial * n_angular;
    m.nodes.reserve(n_nodes);
    m.node_polar.reserve(n_nodes);
    m.nodes.emplace_back(0.0, 0.0);
    m.node_polar.emplace_back(0.0, 0.0);
    for (int i = 1; i <= n_radial; ++i) {
        for (int j = 0; j < n_angular; ++j) {
            const double rho = m.ring_fraction[i] * r[j];
            m.nodes.emplace_back(rho * std::cos(theta[j]), rho * std::sin(theta[j]));
            m.node_polar.emplace_back(rho, theta[j]);
        }
    }

    m.triangles.reserve((2 * n_radial - 1) * n_angular);
    for (int j = 0; j < n_angular; ++j) m.triangles.push_back({0, m.node_index(1, j), m.node_index(1, j + 1)});
    for (int i = 1; i < n_radial; ++i) {
        for (int j = 0; j < n_angular; ++j) {
            const int p00 = m.node_index(i, j), p01 = m.node_index(i, j + 1);
            const int p10 = m.node_index(i + 1, j), p11 = m.node_index(i + 1, j + 1);
            if ((i + j) % 2 == 0) {
                m.triangles.push_back({p00, p10, p11});
                m.triangles.push_back({p00, p11, p01});
            } else {
                m.triangles.push_back({p00, p10, p01});
                m.triangles.push_back({p10, p11, p01});
            }
        }
    }
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& tri = m.triangles[t];
        const Vec2 e1 = m.nodes[tri[1]] - m.nodes[tri[0]];
        const Vec2 e2 = m.nodes[tri[2]] - m.nodes[tri[0]];
        if (!(e1.x() * e2.y() - e1.y() * e2.x() > 0.0))
            fail(ErrorCode::ResolutionTooLow,
                 "triangle " + std::to_string(t) + " is inverted; increase n_angular for this profile");
    }
    for (int j = 0; j < n_angular; ++j)
        m.boundary_edges.push_back({m.node_index(n_radial, j), m.node_index(n_radial, j + 1)});
    return m;
}

namespace {

double angle_at(const Vec2& a, const Vec2& b, const Vec2& c) {
    const Vec2 u = b - a, v = c - a;
    return std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
}

}  // namespace

MeshQuality mesh_quality(const Mesh& mesh) {
    MeshQuality q{kPi, kPi, 0.0, 0.0};
    const int outer_ring = std::max(1, mesh.n_radial / 4);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 &a = mesh.nodes[tri[0]], &b = mesh.nodes[tri[1]], &c = mesh.nodes[tri[2]];
        const double la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
        const double amin = std::min({angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)});
        q.min_angle = std::min(q.min_angle, amin);
        const int t_int = static_cast<int>(t);
        const bool outer = t_int >= mesh.n_angular && (t_int - mesh.n_angular) / (2 * mesh.n_angular) + 1 >= outer_ring;
        if (outer) q.min_angle_outer = std::min(q.min_angle_outer, amin);
        const Vec2 e1 = b - a, e2 = c - a;
        const double area = 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
        const double lmax = std::max({la, lb, lc});
        q.max_aspect = std::max(q.max_aspect, lmax * (la + lb + lc) / (4.0 * std::sqrt(3.0) * area));
        q.h_max = std::max(q.h_max, lmax);
    }
    return q;
}

int count_edges(const Mesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            const int a = t[k], b = t[(k + 1) % 3];
            edges.emplace(std::min(a, b), std::max(a, b));
        }
    return static_cast<int>(edges.size());
}

}  // namespace steklab
