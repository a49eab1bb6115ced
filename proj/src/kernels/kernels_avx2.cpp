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

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace steklab::kernels::avx2 {

// Products are formed with separate multiply and add instructions, never fused,
// so that per-lane results match the scalar reference bit for bit.

void fourier_series(const double* a, const double* b, std::size_t n_modes, const double* cos_t, const double* sin_t,
                    std::size_t n, double* f, double* df, double* d2f) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d c1 = _mm256_loadu_pd(cos_t + i);
        const __m256d s1 = _mm256_loadu_pd(sin_t + i);
        __m256d ck = _mm256_set1_pd(1.0);
        __m256d sk = _mm256_setzero_pd();
        __m256d v = _mm256_setzero_pd();
        __m256d dv = _mm256_setzero_pd();
        __m256d d2v = _mm256_setzero_pd();
        for (std::size_t k = 0; k < n_modes; ++k) {
            const double kd = static_cast<double>(k);
            const __m256d kk = _mm256_set1_pd(kd);
            const __m256d kk2 = _mm256_set1_pd(kd * kd);
            const __m256d ak = _mm256_set1_pd(a[k]);
            const __m256d bk = _mm256_set1_pd(b[k]);
            const __m256d even = _mm256_add_pd(_mm256_mul_pd(ak, ck), _mm256_mul_pd(bk, sk));
            v = _mm256_add_pd(v, even);
            const __m256d odd = _mm256_sub_pd(_mm256_mul_pd(bk, ck), _mm256_mul_pd(ak, sk));
            dv = _mm256_add_pd(dv, _mm256_mul_pd(kk, odd));
            d2v = _mm256_sub_pd(d2v, _mm256_mul_pd(kk2, even));
            const __m256d cn = _mm256_sub_pd(_mm256_mul_pd(ck, c1), _mm256_mul_pd(sk, s1));
            sk = _mm256_add_pd(_mm256_mul_pd(sk, c1), _mm256_mul_pd(ck, s1));
            ck = cn;
        }
        _mm256_storeu_pd(f + i, v);
        _mm256_storeu_pd(df + i, dv);
        _mm256_storeu_pd(d2f + i, d2v);
    }
    if (i < n) scalar::fourier_series(a, b, n_modes, cos_t + i, sin_t + i, n - i, f + i, df + i, d2f + i);
}

NearestPoint nearest_point(double px, double py, const double* xs, const double* ys, std::size_t n) {
    if (n < 8) return scalar::nearest_point(px, py, xs, ys, n);
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    __m256d best = _mm256_set1_pd(__builtin_inf());
    __m256d best_idx = _mm256_setzero_pd();
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
        const __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        const __m256d lt = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, d, lt);
        best_idx = _mm256_blendv_pd(best_idx, idx, lt);
        idx = _mm256_add_pd(idx, four);
    }
    alignas(32) double bd[4];
    alignas(32) double bi[4];
    _mm256_store_pd(bd, best);
    _mm256_store_pd(bi, best_idx);
    NearestPoint out{static_cast<std::size_t>(bi[0]), bd[0]};
    for (int l = 1; l < 4; ++l) {
        const auto li = static_cast<std::size_t>(bi[l]);
        if (bd[l] < out.dist_sq || (bd[l] == out.dist_sq && li < out.index)) out = {li, bd[l]};
    }
    for (; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        const double d = dx * dx + dy * dy;
        if (d < out.dist_sq) out = {i, d};
    }
    return out;
}

double weighted_square_sum(const double* w, const double* u, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d uu = _mm256_loadu_pd(u + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(uu, uu)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += w[i] * (u[i] * u[i]);
    return s;
}

void triangle_geometry(const TriangleSoA& tri, const TriangleGradients& out) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t t = 0;
    for (; t + 4 <= tri.n; t += 4) {
        const __m256d x0 = _mm256_loadu_pd(tri.x[0] + t), x1 = _mm256_loadu_pd(tri.x[1] + t),
                      x2 = _mm256_loadu_pd(tri.x[2] + t);
        const __m256d y0 = _mm256_loadu_pd(tri.y[0] + t), y1 = _mm256_loadu_pd(tri.y[1] + t),
                      y2 = _mm256_loadu_pd(tri.y[2] + t);
        const __m256d twice = _mm256_sub_pd(_mm256_mul_pd(_mm256_sub_pd(x1, x0), _mm256_sub_pd(y2, y0)),
                                            _mm256_mul_pd(_mm256_sub_pd(x2, x0), _mm256_sub_pd(y1, y0)));
        const __m256d inv = _mm256_div_pd(one, twice);
        _mm256_storeu_pd(out.area + t, _mm256_mul_pd(half, twice));
        _mm256_storeu_pd(out.gx[0] + t, _mm256_mul_pd(_mm256_sub_pd(y1, y2), inv));
        _mm256_storeu_pd(out.gx[1] + t, _mm256_mul_pd(_mm256_sub_pd(y2, y0), inv));
        _mm256_storeu_pd(out.gx[2] + t, _mm256_mul_pd(_mm256_sub_pd(y0, y1), inv));
        _mm256_storeu_pd(out.gy[0] + t, _mm256_mul_pd(_mm256_sub_pd(x2, x1), inv));
        _mm256_storeu_pd(out.gy[1] + t, _mm256_mul_pd(_mm256_sub_pd(x0, x2), inv));
        _mm256_storeu_pd(out.gy[2] + t, _mm256_mul_pd(_mm256_sub_pd(x1, x0), inv));
    }
    if (t < tri.n) {
        TriangleSoA rest{{tri.x[0] + t, tri.x[1] + t, tri.x[2] + t}, {tri.y[0] + t, tri.y[1] + t, tri.y[2] + t},
                         tri.n - t};
        TriangleGradients o{out.area + t, {out.gx[0] + t, out.gx[1] + t, out.gx[2] + t},
                            {out.gy[0] + t, out.gy[1] + t, out.gy[2] + t}};
        scalar::triangle_geometry(rest, o);
    }
}

void gradient_square(const double* const gx[3], const double* const gy[3], const double* const u[3], std::size_t n,
                     double* out) {
    std::size_t t = 0;
    for (; t + 4 <= n; t += 4) {
        const __m256d u0 = _mm256_loadu_pd(u[0] + t), u1 = _mm256_loadu_pd(u[1] + t), u2 = _mm256_loadu_pd(u[2] + t);
        const __m256d ux = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(u0, _mm256_loadu_pd(gx[0] + t)),
                                                       _mm256_mul_pd(u1, _mm256_loadu_pd(gx[1] + t))),
                                         _mm256_mul_pd(u2, _mm256_loadu_pd(gx[2] + t)));
        const __m256d uy = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(u0, _mm256_loadu_pd(gy[0] + t)),
                                                       _mm256_mul_pd(u1, _mm256_loadu_pd(gy[1] + t))),
                                         _mm256_mul_pd(u2, _mm256_loadu_pd(gy[2] + t)));
        _mm256_storeu_pd(out + t, _mm256_add_pd(_mm256_mul_pd(ux, ux), _mm256_mul_pd(uy, uy)));
    }
    if (t < n) {
        const double* gx2[3] = {gx[0] + t, gx[1] + t, gx[2] + t};
        const double* gy2[3] = {gy[0] + t, gy[1] + t, gy[2] + t};
        const double* u2[3] = {u[0] + t, u[1] + t, u[2] + t};
        scalar::gradient_square(gx2, gy2, u2, n - t, out + t);
    }
}

}  // namespace steklab::kernels::avx2
