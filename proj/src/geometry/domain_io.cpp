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

#include <json.hpp>

#include "domain_impl.hpp"
#include "steklab/errors.hpp"
#include "steklab/util.hpp"

namespace steklab {

using nlohmann::json;

std::string DomainSpec::to_json() const {
    json j;
    j["cos"] = impl_->a;
    j["sin"] = impl_->b;
    j["scale"] = impl_->scale;
    j["n_quad"] = impl_->n_quad;
    return j.dump();
}

DomainSpec DomainSpec::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::ConfigParse, std::string("domain spec: ") + e.what());
    }
    if (!j.is_object() || !j.contains("cos")) fail(ErrorCode::ConfigParse, "domain spec needs a 'cos' array");
    FourierCoeffs c;
    double scale = 1.0;
    int n_quad = kDefaultQuad;
    try {
        c.cos_coeffs = j.at("cos").get<std::vector<double>>();
        if (j.contains("sin")) c.sin_coeffs = j.at("sin").get<std::vector<double>>();
        if (j.contains("scale")) scale = j.at("scale").get<double>();
        if (j.contains("n_quad")) n_quad = j.at("n_quad").get<int>();
    } catch (const json::exception& e) {
        fail(ErrorCode::ConfigParse, std::string("domain spec: ") + e.what());
    }
    return make_star_domain(c, scale, n_quad);
}

std::string DomainSpec::hash() const { return sha256_hex(to_json()); }

}  // namespace steklab
