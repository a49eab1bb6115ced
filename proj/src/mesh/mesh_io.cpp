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

#include <sstream>

#include "steklab/errors.hpp"
#include "steklab/mesh.hpp"
#include "steklab/util.hpp"

namespace steklab {

// Layout:
//   steklab-mesh 1
//   params <n_radial> <n_angular> <grading>
//   rings <count>            then the ring fractions, one per line
//   nodes <count>            then one "x y rho theta" line per node
//   triangles <count>        then one "a b c" line per triangle
//   boundary_edges <count>   then one "a b" line per edge
std::string Mesh::to_text() const {
    std::string out = "steklab-mesh 1\n";
    out += "params " + std::to_string(n_radial) + " " + std::to_string(n_angular) + " " + fmt17(grading) + "\n";
    out += "rings " + std::to_string(ring_fraction.size()) + "\n";
    for (double s : ring_fraction) out += fmt17(s) + "\n";
    out += "nodes " + std::to_string(nodes.size()) + "\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
        out += fmt17(nodes[i].x()) + " " + fmt17(nodes[i].y()) + " " + fmt17(node_polar[i].x()) + " " +
               fmt17(node_polar[i].y()) + "\n";
    out += "triangles " + std::to_string(triangles.size()) + "\n";
    for (const auto& t : triangles)
        out += std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
    out += "boundary_edges " + std::to_string(boundary_edges.size()) + "\n";
    for (const auto& e : boundary_edges) out += std::to_string(e[0]) + " " + std::to_string(e[1]) + "\n";
    return out;
}

namespace {

void expect(std::istringstream& in, const std::string& word) {
    std::string w;
    if (!(in >> w) || w != word) fail(ErrorCode::MeshFormat, "expected '" + word + "', got '" + w + "'");
}

template <class T>
T read(std::istringstream& in, const char* what) {
    T v;
    if (!(in >> v)) fail(ErrorCode::MeshFormat, std::string("could not read ") + what);
    return v;
}

}  // namespace

Mesh Mesh::from_text(const std::string& text) {
    std::istringstream in(text);
    expect(in, "steklab-mesh");
    if (read<int>(in, "version") != 1) fail(ErrorCode::MeshFormat, "unsupported mesh version");
    Mesh m;
    expect(in, "params");
    m.n_radial = read<int>(in, "n_radial");
    m.n_angular = read<int>(in, "n_angular");
    m.grading = read<double>(in, "grading");
    if (m.n_radial < 2 || m.n_angular < 8) fail(ErrorCode::MeshFormat, "bad resolution");

    expect(in, "rings");
    if (read<std::size_t>(in, "ring count") != static_cast<std::size_t>(m.n_radial + 1))
        fail(ErrorCode::MeshFormat, "ring count");
    m.ring_fraction.resize(m.n_radial + 1);
    for (double& s : m.ring_fraction) s = read<double>(in, "ring fraction");

    expect(in, "nodes");
    const auto nn = read<std::size_t>(in, "node count");
    if (nn != static_cast<std::size_t>(1 + m.n_radial * m.n_angular)) fail(ErrorCode::MeshFormat, "node count");
    m.nodes.resize(nn);
    m.node_polar.resize(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        m.nodes[i].x() = read<double>(in, "x");
        m.nodes[i].y() = read<double>(in, "y");
        m.node_polar[i].x() = read<double>(in, "rho");
        m.node_polar[i].y() = read<double>(in, "theta");
    }
    expect(in, "triangles");
    const auto nt = read<std::size_t>(in, "triangle count");
    if (nt != static_cast<std::size_t>((2 * m.n_radial - 1) * m.n_angular))
        fail(ErrorCode::MeshFormat, "triangle count");
    m.triangles.resize(nt);
    for (auto& t : m.triangles)
        for (int& v : t) {
            v = read<int>(in, "triangle vertex");
            if (v < 0 || static_cast<std::size_t>(v) >= nn) fail(ErrorCode::MeshFormat, "vertex out of range");
        }
    expect(in, "boundary_edges");
    const auto ne = read<std::size_t>(in, "edge count");
    if (ne != static_cast<std::size_t>(m.n_angular)) fail(ErrorCode::MeshFormat, "boundary edge count");
    m.boundary_edges.resize(ne);
    for (auto& e : m.boundary_edges)
        for (int& v : e) {
            v = read<int>(in, "edge vertex");
            if (v < 0 || static_cast<std::size_t>(v) >= nn) fail(ErrorCode::MeshFormat, "vertex out of range");
        }

    return m;
}

std::string Mesh::hash() const { return sha256_hex(to_text()); }

}  // namespace steklab
