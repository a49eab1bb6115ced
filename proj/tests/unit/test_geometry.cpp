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
#include <vector>

#include "steklab/errors.hpp"
#include "steklab/geometry.hpp"

using namespace steklab;

namespace {

DomainSpec flower() { return make_flower(0.2, 3); }

double flower_r(double t) { return 1.0 + 0.2 * std::cos(3.0 * t); }
double flower_dr(double t) { return -0.6 * std::sin(3.0 * t); }
Vec2 flower_point(double t) { return flower_r(t) * Vec2(std::cos(t), std::sin(t)); }

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

// Curvature of the circle through three points.
double circle_curvature(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double cross = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    return 2.0 * std::abs(cross) / ((b - a).norm() * (c - b).norm() * (a - c).norm());
}

// Reach of the flower from a polyline: smallest radius of curvature from
// three-point circle fits, and half the shortest double-normal chord.
double brute_force_reach(int n) {
    std::vector<Vec2> p(n), nrm(n);
    for (int i = 0; i < n; ++i) p[i] = flower_point(2.0 * kPi * i / n);
    double kmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec2 &a = p[(i + n - 1) % n], &b = p[i], &c = p[(i + 1) % n];
        const double cross = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
        if (cross > 0) kmax = std::max(kmax, circle_curvature(a, b, c));
        const Vec2 t = (c - a).normalized();
        nrm[i] = Vec2(-t.y(), t.x());
    }
    double chord = 1e300;
    const int gap = n / 8;
    for (int i = 0; i < n; ++i)
        for (int j = i + gap; j < n - gap + i && j < n; ++j) {
            const Vec2 d = (p[j] - p[i]);
            const double len = d.norm();
            const Vec2 e = d / len;
            const double mis = std::abs(e.x() * nrm[i].y() - e.y() * nrm[i].x()) +
                               std::abs(e.x() * nrm[j].y() - e.y() * nrm[j].x());
            if (mis < 4.0 * 2.0 * kPi / n) chord = std::min(chord, len);
        }
    return std::min(1.0 / kmax, 0.5 * chord);
}

double lens_ratio(double s) {
    // |B(p, s) cap unit disk| / s^2 for p on the unit circle
    const double a = s * s * std::acos(s / 2.0) + std::acos(1.0 - s * s / 2.0) - 0.5 * s * std::sqrt(4.0 - s * s);
    return a / (s * s);
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("profiles") {
    const DomainSpec disk = make_star_domain({{1.0}, {}}, 1.0);
    CHECK(disk.phi_min() == doctest::Approx(1.0));
    CHECK(disk.phi_max() == doctest::Approx(1.0));
    const DomainSpec f = flower();
    CHECK(f.phi_min() == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(f.phi_max() == doctest::Approx(1.2).epsilon(1e-9));
    for (double t : {0.0, 0.4, 1.3, 5.9}) {
        CHECK(f.radial(t).r == doctest::Approx(flower_r(t)).epsilon(1e-14));
        CHECK(f.radial(t).dr == doctest::Approx(flower_dr(t)).epsilon(1e-12));
    }
    CHECK(f.contains(Vec2(1.15, 0.0)));
    CHECK_FALSE(f.contains(Vec2(0.0, 1.15)));
}

TEST_CASE("construction errors") {
    CHECK(code_of([] { make_star_domain({{1.0, -1.1}, {}}, 1.0); }) == ErrorCode::NonPositiveProfile);
    CHECK(code_of([] { make_star_domain({{}, {}}, 1.0); }) == ErrorCode::EmptyCoefficients);
    CHECK(code_of([] { make_star_domain({std::vector<double>(DomainSpec::kMaxModes + 2, 0.001), {}}, 1.0); }) ==
          ErrorCode::TooManyModes);
    CHECK(code_of([] { make_star_domain({{1.0}, {}}, -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("length and area") {
    CHECK(boundary_length(make_disk(1.0)) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(boundary_length(make_disk(2.0)) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    const int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        sum += std::hypot(flower_r(t), flower_dr(t));
    }
    CHECK(boundary_length(flower()) == doctest::Approx(sum * 2.0 * kPi / n).epsilon(1e-8));
    CHECK(domain_area(flower()) == doctest::Approx(1.02 * kPi).epsilon(1e-12));
}

TEST_CASE("offset curvature") {
    const DomainSpec disk = make_disk(1.0);
    CHECK(offset_curvature(disk, 0.2, 0.3) == doctest::Approx(1.25).epsilon(1e-10));
    CHECK(offset_curvature(disk, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(code_of([&] { offset_curvature(disk, 1.5, 0.0); }) == ErrorCode::BeyondInjectivityRadius);

    // trace the offset by a numerical normal step and fit a circle
    const double rho = 0.05, h = 1e-3, e = 1e-6;
    auto traced = [&](double t) {
        const Vec2 tan = (flower_point(t + e) - flower_point(t - e)).normalized();
        return Vec2(flower_point(t) + rho * Vec2(-tan.y(), tan.x()));
    };
    const double k = circle_curvature(traced(-h), traced(0.0), traced(h));
    CHECK(offset_curvature(flower(), rho, 0.0) == doctest::Approx(k).epsilon(1e-4));
}

TEST_CASE("normal injectivity radius") {
    CHECK(normal_injectivity_radius(make_disk(1.0)) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(normal_injectivity_radius(make_disk(2.0)) == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(normal_injectivity_radius(flower()) == doctest::Approx(brute_force_reach(2048)).epsilon(0.01));
}

TEST_CASE("distance to boundary") {
    const DomainSpec f = flower();
    for (const Vec2 x : {Vec2(0.3, 0.1), Vec2(-0.5, 0.4), Vec2(0.9, -0.2)}) {
        double best = 1e300;
        for (int i = 0; i < 200000; ++i) best = std::min(best, (flower_point(2.0 * kPi * i / 200000) - x).norm());
        CHECK(f.distance_to_boundary(x).distance == doctest::Approx(best).epsilon(1e-8));
    }
}

TEST_CASE("json round trip") {
    const DomainSpec f = make_star_domain({{1.0, 0.05, 0.1}, {0.0, 0.02}}, 1.5, 256);
    const DomainSpec g = DomainSpec::from_json(f.to_json());
    CHECK(g.hash() == f.hash());
    CHECK(g.scale() == 1.5);
    CHECK(g.n_quad() == 256);
    CHECK(g.sin_coeffs()[1] == 0.02);
    CHECK(f.hash() != make_disk(1.0).hash());
    CHECK(code_of([] { DomainSpec::from_json("{\"sin\": [0]}"); }) == ErrorCode::ConfigParse);
    CHECK(code_of([] { DomainSpec::from_json("not json"); }) == ErrorCode::ConfigParse);
}

TEST_CASE("potential closed forms match finite differences") {
    const double e = 1e-5;
    for (const LevelFamily& fam : {make_homothetic_family(flower()), make_offset_family(flower(), 0.4)}) {
        CAPTURE(to_string(fam.kind));
        for (const Vec2 x : {Vec2(0.55, 0.2), Vec2(-0.3, 0.6), Vec2(0.1, -0.75)}) {
            const PotentialSample p = potential_eval_unchecked(fam, x);
            auto b = [&](const Vec2& y) { return potential_eval_unchecked(fam, y).b; };
            auto gb = [&](const Vec2& y) { return potential_eval_unchecked(fam, y).grad_b; };
            const Vec2 ex(e, 0), ey(0, e);
            const Vec2 g((b(x + ex) - b(x - ex)) / (2 * e), (b(x + ey) - b(x - ey)) / (2 * e));
            CHECK((g - p.grad_b).norm() < 1e-7);
            CHECK(p.grad_norm == doctest::Approx(g.norm()).epsilon(1e-7));
            Mat2 hb;
            hb.col(0) = (gb(x + ex) - gb(x - ex)) / (2 * e);
            hb.col(1) = (gb(x + ey) - gb(x - ey)) / (2 * e);
            CHECK((hb - p.hess_b).norm() < 1e-5);
            // f = b^2/4, S = f - |grad f|^2, T = I/2 - Hess f
            const Vec2 gf = 0.5 * p.b * g;
            CHECK(p.S == doctest::Approx(p.f - gf.squaredNorm()).epsilon(1e-7));
            const Mat2 hf = 0.5 * g * g.transpose() + 0.5 * p.b * hb;
            CHECK((p.T - (0.5 * Mat2::Identity() - hf)).norm() < 1e-5);
            CHECK(p.trace_T == doctest::Approx(p.T.trace()).epsilon(1e-12));
            auto S = [&](const Vec2& y) { return potential_eval_unchecked(fam, y).S; };
            const Vec2 gS((S(x + ex) - S(x - ex)) / (2 * e), (S(x + ey) - S(x - ey)) / (2 * e));
            CHECK((gS - p.grad_S).norm() < 1e-7);
        }
    }
}

TEST_CASE("potential invariants") {
    const LevelFamily off = make_offset_family(flower(), 0.4);
    const PotentialSample p = potential_eval(off, Vec2(0.0, 0.7));
    CHECK(p.S == 0.0);
    CHECK(p.grad_norm == 1.0);

    const LevelFamily disk = make_homothetic_family(make_disk(1.0), 1.0);
    const PotentialSample q = potential_eval(disk, Vec2(0.3, 0.4));
    CHECK(q.b == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(q.grad_norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(q.S) < 1e-14);

    const LevelFamily hf = make_homothetic_family(flower());
    for (int i = 0; i < 64; ++i) {
        const double t = 2.0 * kPi * i / 64;
        const PotentialSample s = homothetic_potential_at(hf, 0.9 * flower_r(t), t);
        CHECK(s.S > 0.0);
        CHECK(s.S < s.f);
    }
    CHECK(code_of([&] { potential_eval(disk, Vec2(0.1, 0.0)); }) == ErrorCode::OutOfBand);
    CHECK(code_of([&] { potential_eval(off, Vec2(0.0, 0.0)); }) == ErrorCode::OutOfBand);
    CHECK(code_of([] { make_offset_family(flower(), 0.9); }) == ErrorCode::BeyondInjectivityRadius);
    CHECK(family_kind_from_string("offset") == FamilyKind::DistanceOffset);
    CHECK(code_of([] { family_kind_from_string("radial"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("geometry constants on the disk") {
    const DomainSpec disk = make_disk(1.0);
    const GeometryConstants gc = geometry_constants(disk, 0.5, 1.0, make_offset_family(disk, 0.5));
    CHECK(gc.C_H == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gc.C_II == gc.C_H);
    CHECK(gc.K == 0.0);
    CHECK(gc.nir == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(gc.gamma0 == 1.0);
    // smallest ratio comes from the largest sampled ball centred on the boundary
    const double s = 0.25 * 7.5 / 8.0;
    CHECK(gc.v0 == doctest::Approx(lens_ratio(s)).epsilon(5e-3));
    CHECK(gc.v0 < kPi / 2.0);
    CHECK(gc.v0 > 0.45 * kPi);
    CHECK(code_of([&] { geometry_constants(disk, 1.5, 1.0, make_offset_family(disk, 0.5)); }) ==
          ErrorCode::BeyondInjectivityRadius);
}

TEST_CASE("constants csv row") {
    const DomainSpec disk = make_disk(1.0);
    const GeometryConstants gc = geometry_constants(disk, 0.5, 1.0, make_offset_family(disk, 0.5));
    const std::string row = constants_csv_row(disk, gc);
    const std::string header = constants_csv_header();
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
    CHECK(row.rfind(disk.hash(), 0) == 0);
}

}
