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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "steklab/errors.hpp"
#include "steklab/oracle.hpp"

using namespace steklab;
using namespace steklab::oracle;

namespace {

// Chebyshev collocation of u'' + u'/r - k^2 u/r^2 = 0 on [a, b] with
// Steklov rows at both ends; interior unknowns are eliminated.
std::vector<double> collocated_mode(double a, double b, int k, int n) {
    Eigen::VectorXd x(n + 1);
    for (int i = 0; i <= n; ++i) x[i] = std::cos(kPi * i / n);
    Eigen::MatrixXd D(n + 1, n + 1);
    auto c = [&](int i) { return (i == 0 || i == n ? 2.0 : 1.0) * (i % 2 ? -1.0 : 1.0); };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (i != j) D(i, j) = c(i) / c(j) / (x[i] - x[j]);
    for (int i = 0; i <= n; ++i) {
        double s = 0;
        for (int j = 0; j <= n; ++j)
            if (j != i) s += D(i, j);
        D(i, i) = -s;
    }
    const double jac = 2.0 / (b - a);
    const Eigen::MatrixXd D1 = jac * D, D2 = D1 * D1;
    Eigen::VectorXd r(n + 1);
    for (int i = 0; i <= n; ++i) r[i] = a + (b - a) * (x[i] + 1.0) / 2.0;

    // node 0 is r = b, node n is r = a
    Eigen::MatrixXd A(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        A.row(i) = D2.row(i) + D1.row(i) / r[i] - Eigen::RowVectorXd::Unit(n + 1, i) * (k * k / (r[i] * r[i]));
    A.row(0) = D1.row(0);
    A.row(n) = -D1.row(n);
    std::vector<int> bnd{0, n}, in;
    for (int i = 1; i < n; ++i) in.push_back(i);
    Eigen::MatrixXd Aii(n - 1, n - 1), Aib(n - 1, 2), Abi(2, n - 1), Abb(2, 2);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n - 1; ++j) Aii(i, j) = A(in[i], in[j]);
        for (int j = 0; j < 2; ++j) Aib(i, j) = A(in[i], bnd[j]);
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < n - 1; ++j) Abi(i, j) = A(bnd[i], in[j]);
        for (int j = 0; j < 2; ++j) Abb(i, j) = A(bnd[i], bnd[j]);
    }
    const Eigen::MatrixXd N = Abb - Abi * Aii.fullPivLu().solve(Aib);
    Eigen::EigenSolver<Eigen::MatrixXd> es(N);
    std::vector<double> ev{es.eigenvalues()[0].real(), es.eigenvalues()[1].real()};
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("disk spectrum") {
    CHECK(disk_spectrum(1.0, 9) == std::vector<double>{0, 1, 1, 2, 2, 3, 3, 4, 4});
    CHECK(disk_spectrum(2.0, 3) == std::vector<double>{0, 0.5, 0.5});
    CHECK(disk_spectrum(1.0, 1) == std::vector<double>{0});
    CHECK(disk_spectrum_below(1.0, 2.5) == std::vector<double>{0, 1, 1, 2, 2});
    CHECK(disk_spectrum_below(1.0, 2.0).size() == 3);
}

TEST_CASE("disk eigenfunction closed forms") {
    const DiskEigenfunction u(3, Parity::Cos);
    CHECK(u.I(0.5) == doctest::Approx(kPi / 64));
    CHECK(u.D(0.5) == doctest::Approx(3 * kPi / 64));
    CHECK(u.U(0.5) == 3.0);
    CHECK(u.value(Vec2(0.5, 0.0)) == doctest::Approx(0.125));

    for (int k : {0, 1, 2, 5})
        for (Parity par : {Parity::Cos, Parity::Sin}) {
            if (k == 0 && par == Parity::Sin) continue;
            const DiskEigenfunction f(k, par);
            const double r = 0.7;
            // I by angular quadrature, D by polar quadrature of |grad u|^2
            const int nt = 720, nr = 400;
            double I = 0, D = 0;
            for (int j = 0; j < nt; ++j) {
                const double t = 2 * kPi * (j + 0.5) / nt;
                I += std::pow(f.value(r * Vec2(std::cos(t), std::sin(t))), 2) * 2 * kPi / nt;
                for (int i = 0; i < nr; ++i) {
                    const double s = r * (i + 0.5) / nr;
                    D += f.gradient(s * Vec2(std::cos(t), std::sin(t))).squaredNorm() * s * (r / nr) * (2 * kPi / nt);
                }
            }
            CHECK(f.I(r) == doctest::Approx(I).epsilon(1e-10));
            CHECK(f.D(r) == doctest::Approx(D).epsilon(1e-5));
            CHECK(f.U(r) == doctest::Approx(k));

            const Vec2 x(0.31, -0.42);
            const double e = 1e-6;
            const Vec2 g((f.value(x + Vec2(e, 0)) - f.value(x - Vec2(e, 0))) / (2 * e),
                         (f.value(x + Vec2(0, e)) - f.value(x - Vec2(0, e))) / (2 * e));
            CHECK((g - f.gradient(x)).norm() < 1e-8);
        }
    const DiskEigenfunction c(0, Parity::Cos);
    CHECK(c.D(0.4) == 0.0);
    CHECK(c.U(0.4) == 0.0);
}

TEST_CASE("annulus modes agree with collocation") {
    CHECK(annulus_mode(0.5, 1.0, 0)[1] == doctest::Approx(3.0 / std::log(2.0)).epsilon(1e-12));
    for (auto [a, b] : {std::pair{0.5, 1.0}, {0.2, 1.0}, {1.0, 3.0}})
        for (int k = 0; k <= 8; ++k) {
            const std::vector<double> exact = annulus_mode(a, b, k);
            const std::vector<double> col = collocated_mode(a, b, k, 48);
            CHECK(std::abs(exact[0] - col[0]) < 1e-6 * std::max(1.0, std::abs(col[1])));
            CHECK(exact[1] == doctest::Approx(col[1]).epsilon(1e-6));
        }
}

TEST_CASE("annulus spectrum") {
    const std::vector<double> s = annulus_spectrum(0.5, 1.0, 12);
    CHECK(s.size() == 12);
    CHECK(std::count(s.begin(), s.end(), 0.0) == 1);
    CHECK(std::is_sorted(s.begin(), s.end()));
    std::vector<double> brute;
    for (int k = 0; k <= 12; ++k)
        for (double v : collocated_mode(0.5, 1.0, k, 48)) brute.insert(brute.end(), k == 0 ? 1 : 2, v);
    std::sort(brute.begin(), brute.end());
    for (int i = 1; i < 12; ++i) CHECK(s[i] == doctest::Approx(brute[i]).epsilon(1e-6));
    const std::vector<double> below = annulus_spectrum_below(0.5, 1.0, s[11] + 1e-9);
    CHECK(below.size() >= 12);
    CHECK_THROWS_AS(annulus_mode(1.0, 0.5, 1), Error);
}

}
