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

#include "kernels_impl.hpp"

namespace steklab::kernels::scalar {

void fourier_series(const double* a, const double* b, std::size_t n_modes, const double* cos_t, const double* sin_t,
                    std::size_t n, double* f, double* df, double* d2f) {
    for (std::size_t i = 0; i < n; ++i) {
        const double c1 = cos_t[i];
        const double s1 = sin_t[i];
        double ck = 1.0;
        double sk = 0.0;
        double v = 0.0, dv = 0.0, d2v = 0.0;
        for (std::size_t k = 0; k < n_modes; ++k) {
            const double kk = static_cast<double>(k);
            const double even = a[k] * ck + b[k] * sk;
            v += even;
            dv += kk * (b[k] * ck - a[k] * sk);
            d2v -= kk * kk * even;
            const double cn = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = cn;
        }
        f[i] = v;
        df[i] = dv;
        d2f[i] = d2v;
    }
}

NearestPoint nearest_point(double px, double py, const double* xs, const double* ys, std::size_t n) {
    NearestPoint best{0, 0.0};
    if (n == 0) return best;
    double best_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        const double d = dx * dx + dy * dy;
        if (best_d < 0.0 || d < best_d) {
            best_d = d;
            best.index = i;
        }
    }
    best.dist_sq = best_d;
    return best;
}

double weighted_square_sum(const double* w, const double* u, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * (u[i] * u[i]);
    return s;
}

void triangle_geometry(const TriangleSoA& tri, const TriangleGradients& out) {
    for (std::size_t t = 0; t < tri.n; ++t) {
        const double x0 = tri.x[0][t], x1 = tri.x[1][t], x2 = tri.x[2][t];
        const double y0 = tri.y[0][t], y1 = tri.y[1][t], y2 = tri.y[2][t];
        const double twice = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
        const double inv = 1.0 / twice;
        out.area[t] = 0.5 * twice;
        out.gx[0][t] = (y1 - y2) * inv;
        out.gx[1][t] = (y2 - y0) * inv;
        out.gx[2][t] = (y0 - y1) * inv;
        out.gy[0][t] = (x2 - x1) * inv;
        out.gy[1][t] = (x0 - x2) * inv;
        out.gy[2][t] = (x1 - x0) * inv;
    }
}

void gradient_square(const double* const gx[3], const double* const gy[3], const double* const u[3], std::size_t n,
                     double* out) {
    for (std::size_t t = 0; t < n; ++t) {
        const double ux = u[0][t] * gx[0][t] + u[1][t] * gx[1][t] + u[2][t] * gx[2][t];
        const double uy = u[0][t] * gy[0][t] + u[1][t] * gy[1][t] + u[2][t] * gy[2][t];
        out[t] = ux * ux + uy * uy;
    }
}

}  // namespace steklab::kernels::scalar
