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

#include <mutex>
#include <vector>

#include "steklab/geometry.hpp"

namespace steklab {

struct DomainSpec::Impl {
    std::vector<double> a;  // cosine coefficients, dimensionless
    std::vector<double> b;  // sine coefficients, b[0] == 0
    double scale = 1.0;
    int n_quad = DomainSpec::kDefaultQuad;
    double phi_min = 0.0;
    double phi_max = 0.0;

    // Dense boundary samples for closest-point queries.
    std::vector<double> sample_theta;
    std::vector<double> sample_x;
    std::vector<double> sample_y;

    mutable std::once_flag nir_once;
    mutable double nir = 0.0;
};

}  // namespace steklab
