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

#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"
#include "steklab/errors.hpp"

namespace steklab::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar,
                              &scalar::fourier_series,
                              &scalar::nearest_point,
                              &scalar::weighted_square_sum,
                              &scalar::triangle_geometry,
                              &scalar::gradient_square};

#if defined(STEKLAB_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2,
                            &avx2::fourier_series,
                            &avx2::nearest_point,
                            &avx2::weighted_square_sum,
                            &avx2::triangle_geometry,
                            &avx2::gradient_square};
#endif

const KernelTable& select() noexcept {
    const char* env = std::getenv("STEKLAB_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return kScalar;
#if defined(STEKLAB_HAVE_AVX2)
    if (available(Isa::Avx2)) return kAvx2;
#endif
    return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool available(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(STEKLAB_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") != 0;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& table(Isa isa) {
    if (!available(isa)) fail(ErrorCode::InvalidArgument, "kernel variant not available: " + std::string(to_string(isa)));
#if defined(STEKLAB_HAVE_AVX2)
    if (isa == Isa::Avx2) return kAvx2;
#endif
    return kScalar;
}

const KernelTable& active() noexcept {
    static const KernelTable& t = select();
    return t;
}

void fourier_series(std::span<const double> a, std::span<const double> b, std::span<const double> cos_t,
                    std::span<const double> sin_t, std::span<double> f, std::span<double> df,
                    std::span<double> d2f) {
    if (a.size() != b.size() || cos_t.size() != sin_t.size() || f.size() < cos_t.size() ||
        df.size() < cos_t.size() || d2f.size() < cos_t.size())
        fail(ErrorCode::InvalidArgument, "fourier_series: size mismatch");
    active().fourier_series(a.data(), b.data(), a.size(), cos_t.data(), sin_t.data(), cos_t.size(), f.data(),
                            df.data(), d2f.data());
}

NearestPoint nearest_point(double px, double py, std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty()) fail(ErrorCode::InvalidArgument, "nearest_point: bad cloud");
    return active().nearest_point(px, py, xs.data(), ys.data(), xs.size());
}

double weighted_square_sum(std::span<const double> w, std::span<const double> u) {
    if (w.size() != u.size()) fail(ErrorCode::InvalidArgument, "weighted_square_sum: size mismatch");
    return active().weighted_square_sum(w.data(), u.data(), w.size());
}

}  // namespace steklab::kernels
