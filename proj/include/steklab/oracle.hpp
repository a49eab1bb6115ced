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

#include <vector>

#include "steklab/geometry.hpp"

namespace steklab::oracle {

/// {0} followed by k/R twice for k = 1, 2, ..., truncated to m values.
std::vector<double> disk_spectrum(double R, int m);

/// Every disk eigenvalue strictly below sigma_max, with multiplicity.
std::vector<double> disk_spectrum_below(double R, double sigma_max);

enum class Parity { Cos, Sin };

/// r^k cos(k theta) or r^k sin(k theta) on the unit disk, with the closed forms
/// of I, D and U for the family b = |x|.
class DiskEigenfunction {
public:
    DiskEigenfunction(int k, Parity parity);

    int k() const { return k_; }
    Parity parity() const { return parity_; }

    double value(const Vec2& x) const;
    Vec2 gradient(const Vec2& x) const;

    double I(double r) const;
    double D(double r) const;
    double U(double r) const;

private:
    int k_;
    Parity parity_;
};

/// Nonzero Steklov eigenvalues of the annulus a < |x| < b for Fourier mode k,
/// ascending. Mode 0 returns {0, (1/a + 1/b)/ln(b/a)}.
std::vector<double> annulus_mode(double a, double b, int k);

/// Ascending annulus spectrum with multiplicity (2 for k >= 1), truncated to m.
std::vector<double> annulus_spectrum(double a, double b, int m);

/// Every annulus eigenvalue strictly below sigma_max, with multiplicity.
std::vector<double> annulus_spectrum_below(double a, double b, double sigma_max);

}  // namespace steklab::oracle
