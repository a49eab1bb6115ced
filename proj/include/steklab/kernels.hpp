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

// Data-parallel inner loops. Each kernel has a scalar reference variant and,
// on x86-64, an AVX2 variant; the variant is picked once at startup from the
// CPU feature bits and can be forced with STEKLAB_SIMD=scalar|avx2.

#include <cstddef>
#include <span>
#include <string_view>

namespace steklab::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct NearestPoint {
    std::size_t index = 0;
    double dist_sq = 0.0;
};

/// Structure-of-arrays view over n triangles: vertex k of triangle t is
/// (x[k][t], y[k][t]).
struct TriangleSoA {
    const double* x[3];
    const double* y[3];
    std::size_t n;
};

/// Output of triangle_geometry: signed area and the gradients of the three
/// barycentric basis functions.
struct TriangleGradients {
    double* area;
    double* gx[3];
    double* gy[3];
};

namespace detail {
// Truncated Fourier series f = sum_k a[k] cos(k t) + b[k] sin(k t), k < n_modes,
// and its first two derivatives, at n angles given through cos t and sin t.
using FourierFn = void (*)(const double* a, const double* b, std::size_t n_modes, const double* cos_t,
                           const double* sin_t, std::size_t n, double* f, double* df, double* d2f);
// Closest point of the cloud (xs, ys) to (px, py); ties resolve to the lowest index.
using NearestFn = NearestPoint (*)(double px, double py, const double* xs, const double* ys, std::size_t n);
// sum_i w[i] * u[i]^2
using WeightedSquareSumFn = double (*)(const double* w, const double* u, std::size_t n);
using TriangleGeometryFn = void (*)(const TriangleSoA& tri, const TriangleGradients& out);
// |sum_k u[k][t] * grad(lambda_k)|^2 per triangle
using GradientSquareFn = void (*)(const double* const gx[3], const double* const gy[3], const double* const u[3],
                                  std::size_t n, double* out);
}  // namespace detail

struct KernelTable {
    Isa isa;
    detail::FourierFn fourier_series;
    detail::NearestFn nearest_point;
    detail::WeightedSquareSumFn weighted_square_sum;
    detail::TriangleGeometryFn triangle_geometry;
    detail::GradientSquareFn gradient_square;
};

/// True when the variant is compiled in and the running CPU supports it.
bool available(Isa isa) noexcept;

/// The table for a specific variant. Throws InvalidArgument when unavailable.
const KernelTable& table(Isa isa);

/// The dispatched table used by the library.
const KernelTable& active() noexcept;

// Span conveniences over the active table.

void fourier_series(std::span<const double> a, std::span<const double> b, std::span<const double> cos_t,
                    std::span<const double> sin_t, std::span<double> f, std::span<double> df,
                    std::span<double> d2f);

NearestPoint nearest_point(double px, double py, std::span<const double> xs, std::span<const double> ys);

double weighted_square_sum(std::span<const double> w, std::span<const double> u);

}  // namespace steklab::kernels
