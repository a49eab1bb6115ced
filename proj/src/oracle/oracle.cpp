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
#include "steklab/oracle.hpp"

namespace steklab::oracle {

std::vector<double> disk_spectrum(double R, int m) {
    if (!(R > 0.0)) fail(ErrorCode::InvalidArgument, "disk radius must be positive");
    if (m < 1) fail(ErrorCode::InvalidArgument, "m must be at least 1");
    std::vector<double> out{0.0};
    for (int k = 1; static_cast<int>(out.size()) < m; ++k) {
        out.push_back(k / R);
        if (static_cast<int>(out.size()) < m) out.push_back(k / R);
    }
    return out;
}

std::vector<double> disk_spectrum_below(double R, double sigma_max) {
    if (!(R > 0.0)) fail(ErrorCode::InvalidArgument, "disk radius must be positive");
    std::vector<double> out;
    if (sigma_max > 0.0) out.push_back(0.0);
    for (int k = 1; k / R < sigma_max; ++k) {
        out.push_back(k / R);
        out.push_back(k / R);
    }
    return out;
}

DiskEigenfunction::DiskEigenfunction(int k, Parity parity) : k_(k), parity_(parity) {
    if (k < 0) fail(ErrorCode::InvalidArgument, "mode index must be nonnegative");
}

double DiskEigenfunction::value(const Vec2& x) const {
    const double r = x.norm();
    const double th = std::atan2(x.y(), x.x());
    const double rk = std::pow(r, k_);
    return parity_ == Parity::Cos ? rk * std::cos(k_ * th) : rk * std::sin(k_ * th);
}

Vec2 DiskEigenfunction::gradient(const Vec2& x) const {
    if (k_ == 0) return Vec2::Zero();
    // From d/dz (x + iy)^k = k (x + iy)^(k-1).
    const double r = x.norm();
    const double th = std::atan2(x.y(), x.x());
    const double rk1 = k_ * std::pow(r, k_ - 1);
    const double c = std::cos((k_ - 1) * th), s = std::sin((k_ - 1) * th);
    return parity_ == Parity::Cos ? Vec2(rk1 * c, -rk1 * s) : Vec2(rk1 * s, rk1 * c);
}

double DiskEigenfunction::I(double r) const {
    return k_ == 0 ? 2.0 * kPi : kPi * std::pow(r, 2 * k_);
}

double DiskEigenfunction::D(double r) const { return k_ * kPi * std::pow(r, 2 * k_); }

double DiskEigenfunction::U(double) const { return static_cast<double>(k_); }

std::vector<double> annulus_mode(double a, double b, int k) {
    if (!(a > 0.0 && a < b)) fail(ErrorCode::InvalidArgument, "annulus needs 0 < a < b");
    if (k < 0) fail(ErrorCode::InvalidArgument, "mode index must be nonnegative");
    if (k == 0) return {0.0, (1.0 / a + 1.0 / b) / std::log(b / a)};
    // N c = sigma V c for u = alpha r^k + beta r^-k.
    const double kk = k;
    const double v11 = std::pow(a, kk), v12 = std::pow(a, -kk), v21 = std::pow(b, kk), v22 = std::pow(b, -kk);
    const double n11 = -kk * std::pow(a, kk - 1), n12 = kk * std::pow(a, -kk - 1);
    const double n21 = kk * std::pow(b, kk - 1), n22 = -kk * std::pow(b, -kk - 1);
    const double qa = v11 * v22 - v12 * v21;
    const double qb = -(n11 * v22 + n22 * v11 - n12 * v21 - n21 * v12);
    const double qc = n11 * n22 - n12 * n21;
    const double disc = std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * qc));
    const double q = -0.5 * (qb + std::copysign(disc, qb));
    double s1 = q / qa, s2 = qc / q;
    if (s1 > s2) std::swap(s1, s2);
    return {s1, s2};
}

std::vector<double> annulus_spectrum_below(double a, double b, double sigma_max) {
    std::vector<double> out;
    for (double s : annulus_mode(a, b, 0))
        if (s < sigma_max) out.push_back(s);
    for (int k = 1;; ++k) {
        const std::vector<double> ev = annulus_mode(a, b, k);
        if (ev[0] >= sigma_max) break;
        for (double s : ev)
            if (s < sigma_max) out.insert(out.end(), 2, s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> annulus_spectrum(double a, double b, int m) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "m must be at least 1");
    std::vector<double> out = annulus_mode(a, b, 0);
    for (int k = 1;; ++k) {
        const std::vector<double> ev = annulus_mode(a, b, k);
        std::sort(out.begin(), out.end());
        if (static_cast<int>(out.size()) >= m && ev[0] >= out[m - 1]) break;
        for (double s : ev) out.insert(out.end(), 2, s);
    }
    out.resize(m);
    return out;
}

}  // namespace steklab::oracle
