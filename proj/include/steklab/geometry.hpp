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

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace steklab {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = 3.14159265358979323846;

/// phi(t) = sum_k cos_coeffs[k] cos(k t) + sin_coeffs[k] sin(k t). sin_coeffs[0]
/// is ignored. A shorter sine list is zero-padded.
struct FourierCoeffs {
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
};

/// Value and first two angular derivatives of the actual boundary radius
/// scale * phi(t).
struct RadialSample {
    double r;
    double dr;
    double d2r;
};

/// Star-shaped planar domain {|x| < scale * phi(x/|x|)}. Immutable and cheap to copy.
class DomainSpec {
public:
    static constexpr int kMaxModes = 64;
    static constexpr int kDefaultQuad = 512;

    const std::vector<double>& cos_coeffs() const;
    const std::vector<double>& sin_coeffs() const;  // same length as cos_coeffs
    double scale() const;
    int n_quad() const;
    /// Extremes of the dimensionless profile phi over the validation grid.
    double phi_min() const;
    double phi_max() const;

    RadialSample radial(double theta) const;
    void radial(const std::vector<double>& theta, std::vector<double>& r, std::vector<double>& dr,
                std::vector<double>& d2r) const;

    Vec2 boundary_point(double theta) const;
    /// Derivative of the boundary parametrization with respect to theta.
    Vec2 boundary_tangent(double theta) const;
    /// Unit normal pointing into the domain.
    Vec2 inward_normal(double theta) const;
    /// Signed curvature, positive where the boundary is convex.
    double boundary_curvature(double theta) const;

    bool contains(const Vec2& x) const;

    struct Foot {
        double distance;
        double theta;
    };
    /// Euclidean distance from x to the boundary and the parameter of the closest point.
    Foot distance_to_boundary(const Vec2& x) const;

    /// Canonical JSON text and its SHA-256.
    std::string to_json() const;
    static DomainSpec from_json(const std::string& text);
    std::string hash() const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

private:
    explicit DomainSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;

    friend DomainSpec make_star_domain(const FourierCoeffs&, double, int);
};

DomainSpec make_star_domain(const FourierCoeffs& coeffs, double scale, int n_quad = DomainSpec::kDefaultQuad);

/// Unit-profile helpers.
DomainSpec make_disk(double radius, int n_quad = DomainSpec::kDefaultQuad);
DomainSpec make_flower(double amplitude, int petals, double scale = 1.0, int n_quad = DomainSpec::kDefaultQuad);

/// Arc length by the trapezoid rule on n_quad equispaced angles.
double boundary_length(const DomainSpec& domain);

/// Enclosed area, integral of r^2/2 over the angle.
double domain_area(const DomainSpec& domain);

/// Mean curvature of the inward offset curve at distance rho from the boundary
/// point with parameter theta; positive for convex domains.
double offset_curvature(const DomainSpec& domain, double rho, double theta);

/// Point of the offset curve at distance rho from boundary parameter theta.
Vec2 offset_point(const DomainSpec& domain, double rho, double theta);

/// Largest verified inward offset distance for which the normal map stays a
/// diffeomorphism. Computed once per domain and cached.
double normal_injectivity_radius(const DomainSpec& domain);

// ---------------------------------------------------------------------------
// Level families

enum class FamilyKind { Homothetic, DistanceOffset };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& s);

struct LevelFamily {
    FamilyKind kind;
    DomainSpec domain;
    double R;
    double R0;
};

/// Outer parameter of the homothetic potential:
/// inf r * (1 + sup r^-2 |r'|)^(-1/2), replaced by
/// inf r * (1 + sup r'^2 / r^2)^(-1/2) when the first choice would make S negative.
double homothetic_radius(const DomainSpec& domain);

/// R defaults to homothetic_radius, R0 to R/4.
LevelFamily make_homothetic_family(const DomainSpec& domain, std::optional<double> R = {},
                                   std::optional<double> R0 = {});

/// b = R - dist(x, boundary). R defaults to scale; the band depth R - R0 is i0.
LevelFamily make_offset_family(const DomainSpec& domain, double i0, std::optional<double> R = {});

struct PotentialSample {
    double b;
    double f;
    Vec2 grad_b;
    double grad_norm;
    double S;
    Vec2 grad_S;
    Mat2 T;  // 1/2 I - Hess f
    double trace_T;
    double norm_T;  // Frobenius
    Mat2 hess_b;
};

/// Evaluates b and its derived quantities at a point of the band {R0 < b < R}.
/// Throws OutOfBand otherwise.
PotentialSample potential_eval(const LevelFamily& family, const Vec2& x);

/// Same evaluation without the band check; valid wherever the family's closed
/// forms are defined (homothetic: x != 0; offset: dist(x, boundary) < nir).
PotentialSample potential_eval_unchecked(const LevelFamily& family, const Vec2& x);

/// Offset-family evaluation in boundary coordinates (rho, theta), avoiding a
/// closest-point search.
PotentialSample offset_potential_at(const LevelFamily& family, double rho, double theta);

/// Homothetic-family evaluation in polar coordinates.
PotentialSample homothetic_potential_at(const LevelFamily& family, double t, double theta);

// ---------------------------------------------------------------------------
// Constants

struct GeometryConstants {
    double C_H = 0;
    double C_II = 0;
    double nir = 0;
    double i0 = 0;
    double v0 = 0;
    double K = 0;
    double gamma0 = 0;
    double gamma1 = 0;
    double kappa = 0;
    double beta = 0;
};

/// Default working radius, 0.9 * nir.
double default_i0(const DomainSpec& domain);

GeometryConstants geometry_constants(const DomainSpec& domain, double i0, double sigma, const LevelFamily& family);

std::string constants_csv_header();
std::string constants_csv_row(const DomainSpec& domain, const GeometryConstants& gc);

}  // namespace steklab
