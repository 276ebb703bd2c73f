#pragma once

#include <limits>
#include <string>
#include <variant>

#include "bidisc/core.hpp"
#include "bidisc/projective.hpp"

namespace bidisc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Absolute tolerance (scaled by max(1, |z|^2)) for the equality z1^2 + z2^2 - z3^2 = 1.
inline constexpr double kQuadricTol = 1e-8;

enum class DomainKind {
    Bidisc,         // D^2
    BidiscR,        // rho < r
    BidiscST,       // s < rho < t
    Ball,           // B2
    QuadricST,      // s < |z1|^2+|z2|^2-|z3|^2 < t on the quadric, Im-condition
    QuadricProj,    // projective closure: affine part with level > s, plus the curve at infinity
    DiagonalCurve,  // {(z, z)} in D^2
    InfinityCurve,  // {(0 : z1 : z2 : z3) : z1^2+z2^2-z3^2 = 0, Im-condition}
};

struct DomainSpec {
    DomainKind kind = DomainKind::Bidisc;
    double s = 0.0;
    double t = 0.0;

    static DomainSpec bidisc() { return {DomainKind::Bidisc}; }
    static DomainSpec bidisc_r(double r);
    static DomainSpec bidisc_st(double s, double t);
    static DomainSpec ball() { return {DomainKind::Ball}; }
    /// 1 <= s < t <= infinity; t = kInfinity drops the upper bound.
    static DomainSpec quadric_st(double s, double t);
    static DomainSpec quadric_proj(double s);
    static DomainSpec diagonal_curve() { return {DomainKind::DiagonalCurve}; }
    static DomainSpec infinity_curve() { return {DomainKind::InfinityCurve}; }

    std::string name() const;
};

using AnyPoint = std::variant<BidiscPoint, BallPoint, C3Point, ProjectivePoint>;

/// Membership with margin. `margin` is the slack of the tightest strict inequality
/// (positive when satisfied); `equality_residual` the largest violation of an equality
/// constraint. A point is inside iff margin > 0 and equality_residual is within tolerance.
struct Membership {
    bool inside = false;
    double margin = 0.0;
    double equality_residual = 0.0;

    /// Signed distance of the worst constraint from satisfaction (<= 0 when satisfied).
    double residual() const;
};

Membership contains(const DomainSpec& d, const AnyPoint& p);

/// |z1|^2 + |z2|^2 - |z3|^2
double minkowski_form(const C3Point& z);
/// z1^2 + z2^2 - z3^2 - 1
Complex quadric_residual(const C3Point& z);
/// Im(z2 (conj z1 + conj z3))
double im_condition(const C3Point& z);

inline double minkowski_form(Complex z1, Complex z2, Complex z3) { return minkowski_form(C3Point(z1, z2, z3)); }
inline Complex quadric_residual(Complex z1, Complex z2, Complex z3) { return quadric_residual(C3Point(z1, z2, z3)); }
inline double im_condition(Complex z1, Complex z2, Complex z3) { return im_condition(C3Point(z1, z2, z3)); }

/// alpha = 8/a^4 - 8/a^2 + 1 for a in (0, 1).
double alpha_from_a(double a);
/// Inverse of alpha_from_a on alpha in (1, infinity).
double a_from_alpha(double alpha);
/// Minkowski level sqrt((alpha + 1) / 2) of the orbit indexed by alpha.
double eta_level(double alpha);
/// Level 2/a^2 - 1 reached by H on the leaf rho = a.
double level_from_a(double a);
/// a = sqrt(2 / (level + 1)).
double a_from_level(double level);

enum class OrbitKind { Fa, EtaLevel, BallEllipsoid, BallComplexCurve, BallRealSlice };

struct OrbitSpec {
    OrbitKind kind = OrbitKind::Fa;
    double param = 0.0;

    static OrbitSpec fa(double a);
    /// Parameterised by the Minkowski level, which must exceed 1.
    static OrbitSpec eta_level(double level);
    static OrbitSpec ball_ellipsoid(double t);
    static OrbitSpec ball_complex_curve() { return {OrbitKind::BallComplexCurve, 0.0}; }
    static OrbitSpec ball_real_slice() { return {OrbitKind::BallRealSlice, 0.0}; }

    /// Parses "Fa:0.8", "Eta:2.125", "Ellipsoid:0.5", "ComplexCurve", "RealSlice".
    static OrbitSpec parse(const std::string& text);

    std::string name() const;
};

/// Distance of a point from the orbit's defining equations.
double orbit_residual(const OrbitSpec& o, const AnyPoint& p);

}  // namespace bidisc
