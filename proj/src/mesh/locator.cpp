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
#include "steklab/mesh.hpp"

namespace steklab {

MeshLocator::MeshLocator(const Mesh& mesh) : mesh_(&mesh) {
    if (mesh.n_angular < 8 || mesh.ring_fraction.size() != static_cast<std::size_t>(mesh.n_radial + 1))
        fail(ErrorCode::InvalidArgument, "locator needs a structured polar mesh");
}

MeshLocator::Hit MeshLocator::in_triangle(int t, const Vec2& x) const {
    const auto& tri = mesh_->triangles[t];
    const Vec2 &a = mesh_->nodes[tri[0]], &b = mesh_->nodes[tri[1]], &c = mesh_->nodes[tri[2]];
    const double det = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
    const double l1 = ((x.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (x.y() - a.y())) / det;
    const double l2 = ((b.x() - a.x()) * (x.y() - a.y()) - (x.x() - a.x()) * (b.y() - a.y())) / det;
    return {t, {1.0 - l1 - l2, l1, l2}};
}

MeshLocator::Hit MeshLocator::locate(const Vec2& x) const {
    const Mesh& m = *mesh_;
    const int na = m.n_angular;
    double th = std::atan2(x.y(), x.x());
    if (th < 0.0) th += 2.0 * kPi;
    int j = std::min(static_cast<int>(th / (2.0 * kPi) * na), na - 1);

    // Express x in the basis of the two boundary nodes bounding the sector; the
    // coefficient sum is the ring fraction of x along the sector.
    const Vec2& b0 = m.nodes[m.node_index(m.n_radial, j)];
    const Vec2& b1 = m.nodes[m.node_index(m.n_radial, j + 1)];
    const double det = b0.x() * b1.y() - b1.x() * b0.y();
    const double ca = (x.x() * b1.y() - b1.x() * x.y()) / det;
    const double cb = (b0.x() * x.y() - x.x() * b0.y()) / det;
    const double s = ca + cb;

    if (s < m.ring_fraction[1]) return in_triangle(fan_triangle(m, j), x);
    const auto it = std::upper_bound(m.ring_fraction.begin(), m.ring_fraction.end(), s);
    int ring = static_cast<int>(it - m.ring_fraction.begin()) - 1;
    ring = std::clamp(ring, 1, m.n_radial - 1);
    const Hit h0 = in_triangle(quad_triangle(m, ring, j, 0), x);
    const Hit h1 = in_triangle(quad_triangle(m, ring, j, 1), x);
    const double m0 = std::min({h0.bary[0], h0.bary[1], h0.bary[2]});
    const double m1 = std::min({h1.bary[0], h1.bary[1], h1.bary[2]});
    return m0 >= m1 ? h0 : h1;
}

double MeshLocator::interpolate(const std::vector<double>& field, const Vec2& x) const {
    const Hit h = locate(x);
    const auto& tri = mesh_->triangles[h.triangle];
    return h.bary[0] * field[tri[0]] + h.bary[1] * field[tri[1]] + h.bary[2] * field[tri[2]];
}

}  // namespace steklab
