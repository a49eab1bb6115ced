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

#include <array>
#include <string>
#include <vector>

#include "steklab/geometry.hpp"

namespace steklab {

/// Polar-structured triangulation. Node 0 is the center; ring i (1..n_radial)
/// occupies indices 1 + (i-1)*n_angular ... i*n_angular, so the boundary ring
/// is the last n_angular nodes.
struct Mesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise
    std::vector<std::array<int, 2>> boundary_edges;
    std::vector<Vec2> node_polar;       // (polar radius, angle)
    std::vector<double> ring_fraction;  // size n_radial + 1, ring_fraction[0] = 0, back() = 1
    int n_radial = 0;
    int n_angular = 0;
    double grading = 1.0;

    int n_nodes() const { return static_cast<int>(nodes.size()); }
    int n_boundary() const { return n_angular; }
    int first_boundary() const { return n_nodes() - n_angular; }
    int node_index(int ring, int j) const;
    /// Largest boundary edge length, the h used for standoffs.
    double boundary_h() const;

    std::string to_text() const;
    static Mesh from_text(const std::string& text);
    std::string hash() const;
};

/// grading = 1 places ring i at fraction i/n_radial; grading g > 1 shrinks
/// successive ring widths by the factor g toward the boundary.
Mesh generate_mesh(const DomainSpec& domain, int n_radial, int n_angular, double grading = 1.0);

struct MeshQuality {
    double min_angle;        // radians, all triangles
    double min_angle_outer;  // radians, triangles outside a quarter of the ring fractions
    double max_aspect;       // 1 for an equilateral triangle
    double h_max;            // longest edge
};

MeshQuality mesh_quality(const Mesh& mesh);

/// Edge count for the Euler check.
int count_edges(const Mesh& mesh);

/// Point location on the structured mesh. Points beyond the boundary ring are
/// attributed to the outermost triangle of their sector (linear extrapolation).
class MeshLocator {
public:
    explicit MeshLocator(const Mesh& mesh);

    struct Hit {
        int triangle;
        std::array<double, 3> bary;
    };
    Hit locate(const Vec2& x) const;

    /// P1 interpolation of a nodal field.
    double interpolate(const std::vector<double>& field, const Vec2& x) const;

private:
    const Mesh* mesh_;
    Hit in_triangle(int t, const Vec2& x) const;
};

/// Triangle index of the fan triangle in sector j, and of the two triangles of
/// the quad between rings i and i+1 in sector j.
int fan_triangle(const Mesh& mesh, int j);
int quad_triangle(const Mesh& mesh, int ring, int j, int which);

}  // namespace steklab
