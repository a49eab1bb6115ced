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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "steklab/errors.hpp"
#include "steklab/spectral.hpp"

using namespace steklab;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no exception");
    return ErrorCode::Io;
}

GeometryConstants disk_constants() {
    GeometryConstants gc;
    gc.C_H = gc.C_II = 2.0;
    gc.i0 = 0.5;
    gc.nir = 1.0;
    gc.v0 = kPi / 2;
    return gc;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("unit disk eigenpairs") {
    const Mesh mesh = generate_mesh(make_disk(1.0), 48, 192);
    const EigenResult res = steklov_eigs(mesh, 9);
    const double expected[9] = {0, 1, 1, 2, 2, 3, 3, 4, 4};
    CHECK(std::abs(res.sigmas[0]) < 1e-8 * res.sigmas[1]);
    for (int i = 1; i < 9; ++i) CHECK(res.sigmas[i] == doctest::Approx(expected[i]).epsilon(0.01));
    CHECK(std::is_sorted(res.sigmas.begin(), res.sigmas.end()));
    CHECK(res.all_sigmas.size() == 192);
    CHECK(res.mesh_hash == mesh.hash());

    const Eigen::MatrixXd M(assemble_boundary_mass(mesh).bottomRightCorner(192, 192));
    const Eigen::MatrixXd G = res.traces.transpose() * M * res.traces;
    CHECK((G - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-8);

    const HarmonicExtender ext(mesh);
    for (int i = 0; i < 9; ++i) CHECK(ext.residual(res.fields.col(i)) < 1e-10);
    CHECK(res.field(3).size() == static_cast<std::size_t>(mesh.n_nodes()));
    CHECK_THROWS_AS(res.field(9), Error);
}

TEST_CASE("disk of radius two") {
    const EigenResult res = steklov_eigs(generate_mesh(make_disk(2.0), 24, 96), 3);
    CHECK(std::abs(res.sigmas[0]) < 1e-8);
    CHECK(res.sigmas[1] == doctest::Approx(0.5).epsilon(0.01));
    CHECK(res.sigmas[2] == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("eigensolver errors") {
    const Mesh mesh = generate_mesh(make_disk(1.0), 4, 16);
    CHECK(code_of([&] { steklov_eigs(mesh, 17); }) == ErrorCode::TooManyRequested);
    CHECK(code_of([&] { steklov_eigs(mesh, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("counting function") {
    const std::vector<double> eigs{0, 1, 1, 2, 2, 3, 3, 4, 4};
    CHECK(counting_function(eigs, 2.5) == 5);
    CHECK(counting_function(eigs, 0.5) == 1);
    CHECK(counting_function(eigs, 1.0) == 1);
    CHECK(counting_function(eigs, 0.0) == 0);
    CHECK(code_of([&] { counting_function(eigs, -0.1); }) == ErrorCode::NegativeSigma);

    const auto groups = group_multiplets({0, 1, 1 + 1e-9, 2, 2, 2.5});
    REQUIRE(groups.size() == 4);
    CHECK(groups[1].second == 2);
    CHECK(groups[3].second == 1);
}

TEST_CASE("weyl term") {
    CHECK(weyl_term(make_disk(1.0), 2.5) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(weyl_term(make_disk(1.0), 0.0) == 0.0);
    const DomainSpec f = make_flower(0.2, 3);
    CHECK(weyl_term(f, 10.0) == doctest::Approx(10.0 / kPi * boundary_length(f)).epsilon(1e-14));
    CHECK(code_of([&] { weyl_term(f, 1.0, 3); }) == ErrorCode::UnsupportedDimension);
    CHECK(code_of([&] { weyl_term(f, -1.0); }) == ErrorCode::NegativeSigma);
}

TEST_CASE("bound factor") {
    const GeometryConstants gc = disk_constants();
    const double L = 2 * kPi;
    const BoundFactor bf = bound_factor(gc, 10.0, L);
    CHECK(bf.exponent == doctest::Approx(1.0 + 4.0 * std::exp(2.4)).epsilon(1e-14));
    CHECK(bf.log_F == doctest::Approx(bf.exponent - std::log(gc.v0) + std::log(L) + std::log(2.0 + 10.0)));
    CHECK(bf.F == doctest::Approx(std::exp(bf.log_F)));

    CHECK(bound_factor(gc, 1e12, L).exponent == doctest::Approx(gc.C_H * gc.i0 + 4.0).epsilon(1e-9));

    // d log F / d sigma = -24 (C_H + C_II) e^{6 (C_H + C_II) / sigma} / sigma^2 + 1 / (1/i0 + sigma) once sigma > 1/i0
    auto slope = [&](double s) {
        const double c = gc.C_H + gc.C_II;
        return -24.0 * c * std::exp(6.0 * c / s) / (s * s) + 1.0 / (1.0 / gc.i0 + s);
    };
    for (double s = 1.0 / gc.i0 + 0.5; s < 1e4; s *= 1.2) {
        const double h = 1e-4 * s;
        const double fd = (bound_factor(gc, s + h, L).log_F - bound_factor(gc, s - h, L).log_F) / (2 * h);
        CHECK(fd == doctest::Approx(slope(s)).epsilon(1e-5));
    }
    CHECK(slope(100.0) < 0.0);
    CHECK(slope(150.0) > 0.0);

    CHECK(implied_constant(0, bf) == 0.0);
    CHECK(implied_constant(7, bf) == doctest::Approx(7.0 / bf.F));

    GeometryConstants curved = gc;
    curved.K = 0.1;
    CHECK(code_of([&] { bound_factor(curved, 1.0, L); }) == ErrorCode::CurvedNotSupported);
    CHECK(code_of([&] { bound_factor(gc, 1.0, L, 3); }) == ErrorCode::UnsupportedDimension);
}

TEST_CASE("eigenvalue lower bound shape") {
    GeometryConstants gc = disk_constants();
    gc.C_H = gc.C_II = 0.1;
    const double L = 2 * kPi;
    CHECK(eigenvalue_lower_bound_shape(gc, 1, L, 1.0, 0.0) == doctest::Approx(-1.0 / gc.nir));
    const double b1 = eigenvalue_lower_bound_shape(gc, 1, L, 1.0, 1.0);
    const double b2 = eigenvalue_lower_bound_shape(gc, 2, L, 1.0, 1.0);
    const double b7 = eigenvalue_lower_bound_shape(gc, 7, L, 1.0, 1.0);
    CHECK(b2 > b1);
    CHECK((b7 - b1) / 6.0 == doctest::Approx(b2 - b1).epsilon(1e-12));
    GeometryConstants curved = gc;
    curved.K = 1.0;
    CHECK(code_of([&] { eigenvalue_lower_bound_shape(curved, 1, L, 1.0, 1.0); }) == ErrorCode::CurvedNotSupported);
}

}
