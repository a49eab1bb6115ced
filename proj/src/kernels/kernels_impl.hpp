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

#include "steklab/kernels.hpp"

namespace steklab::kernels {

namespace scalar {
void fourier_series(const double* a, const double* b, std::size_t n_modes, const double* cos_t, const double* sin_t,
                    std::size_t n, double* f, double* df, double* d2f);
NearestPoint nearest_point(double px, double py, const double* xs, const double* ys, std::size_t n);
double weighted_square_sum(const double* w, const double* u, std::size_t n);
void triangle_geometry(const TriangleSoA& tri, const TriangleGradients& out);
void gradient_square(const double* const gx[3], const double* const gy[3], const double* const u[3], std::size_t n,
                     double* out);
}  // namespace scalar

#if defined(STEKLAB_HAVE_AVX2)
namespace avx2 {
void fourier_series(const double* a, const double* b, std::size_t n_modes, const double* cos_t, const double* sin_t,
                    std::size_t n, double* f, double* df, double* d2f);
NearestPoint nearest_point(double px, double py, const double* xs, const double* ys, std::size_t n);
double weighted_square_sum(const double* w, const double* u, std::size_t n);
void triangle_geometry(const TriangleSoA& tri, const TriangleGradients& out);
void gradient_square(const double* const gx[3], const double* const gy[3], const double* const u[3], std::size_t n,
                     double* out);
}  // namespace avx2
#endif

}  // namespace steklab::kernels
