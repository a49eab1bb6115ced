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

#include <stdexcept>
#include <string>
#include <string_view>

namespace steklab {

enum class ErrorCode {
    // geometry
    EmptyCoefficients,
    NonPositiveProfile,
    TooManyModes,
    BeyondInjectivityRadius,
    DegenerateBoundary,
    OutOfBand,
    InvalidArgument,
    // mesh
    ResolutionTooLow,
    MeshFormat,
    // fem
    DegenerateTriangle,
    SingularInterior,
    // spectral
    TooManyRequested,
    NonConvergence,
    NegativeSigma,
    UnsupportedDimension,
    CurvedNotSupported,
    // frequency
    IrregularValue,
    DegenerateI,
    // cli / report
    ConfigParse,
    StageFailure,
    CacheCorrupt,
    SchemaMismatch,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure surfaced by the library. The code identifies the contract
/// that was violated; the message carries the offending values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::EmptyCoefficients: return "EmptyCoefficients";
    case ErrorCode::NonPositiveProfile: return "NonPositiveProfile";
    case ErrorCode::TooManyModes: return "TooManyModes";
    case ErrorCode::BeyondInjectivityRadius: return "BeyondInjectivityRadius";
    case ErrorCode::DegenerateBoundary: return "DegenerateBoundary";
    case ErrorCode::OutOfBand: return "OutOfBand";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::MeshFormat: return "MeshFormat";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::SingularInterior: return "SingularInterior";
    case ErrorCode::TooManyRequested: return "TooManyRequested";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NegativeSigma: return "NegativeSigma";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::CurvedNotSupported: return "CurvedNotSupported";
    case ErrorCode::IrregularValue: return "IrregularValue";
    case ErrorCode::DegenerateI: return "DegenerateI";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::StageFailure: return "StageFailure";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace steklab
