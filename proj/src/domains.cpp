#include "bidisc/domains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace bidisc {

namespace {

bool valid_unit_interval(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

std::string fmt(double x)
{
    if (std::isinf(x))
        return "inf";
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

template <class T>
const T& expect(const AnyPoint& p, const DomainSpec& d)
{
    if (const T* q = std::get_if<T>(&p))
        return *q;
    throw DomainError("contains: point type does not match the ambient space of " + d.name());
}

double disc_margin(const BidiscPoint& p) { return std::min(1.0 - std::abs(p.z1), 1.0 - std::abs(p.z2)); }

double rho_unchecked(const BidiscPoint& p) { return std::abs((p.z1 - p.z2) / (1.0 - std::conj(p.z1) * p.z2)); }

Membership finish(double margin, double equality)
{
    return {margin > 0.0 && equality < kQuadricTol, margin, equality};
}

double scaled_quadric(const C3Point& z) { return std::abs(quadric_residual(z)) / std::max(1.0, z.squaredNorm()); }

Membership quadric_st(const C3Point& z, double s, double t)
{
    const double level = minkowski_form(z);
    double margin = std::min(level - s, im_condition(z));
    if (!std::isinf(t))
        margin = std::min(margin, t - level);
    return finish(margin, scaled_quadric(z));
}

Membership infinity_curve(const ProjectivePoint& p)
{
    const double scale = p.max_abs();
    const Eigen::Vector3cd h = p.coords().tail<3>() / scale;
    const double equality = std::max(std::abs(p[0]) / scale, std::abs(h[0] * h[0] + h[1] * h[1] - h[2] * h[2]));
    return finish(im_condition(h), equality);
}

}  // namespace

DomainSpec DomainSpec::bidisc_r(double r)
{
    if (!valid_unit_interval(r))
        throw DomainError("BidiscR: r must lie in (0, 1)");
    return {DomainKind::BidiscR, 0.0, r};
}

DomainSpec DomainSpec::bidisc_st(double s, double t)
{
    if (!(std::isfinite(s) && std::isfinite(t) && 0.0 <= s && s < t && t <= 1.0))
        throw DomainError("BidiscST: need 0 <= s < t <= 1");
    return {DomainKind::BidiscST, s, t};
}

DomainSpec DomainSpec::quadric_st(double s, double t)
{
    if (!(std::isfinite(s) && 1.0 <= s && s < t && !std::isnan(t)))
        throw DomainError("QuadricST: need 1 <= s < t <= infinity");
    return {DomainKind::QuadricST, s, t};
}

DomainSpec DomainSpec::quadric_proj(double s)
{
    if (!(std::isfinite(s) && s >= 1.0))
        throw DomainError("QuadricProj: need s >= 1");
    return {DomainKind::QuadricProj, s, kInfinity};
}

std::string DomainSpec::name() const
{
    switch (kind) {
    case DomainKind::Bidisc: return "Bidisc";
    case DomainKind::BidiscR: return "BidiscR(" + fmt(t) + ")";
    case DomainKind::BidiscST: return "BidiscST(" + fmt(s) + "," + fmt(t) + ")";
    case DomainKind::Ball: return "Ball";
    case DomainKind::QuadricST: return "QuadricST(" + fmt(s) + "," + fmt(t) + ")";
    case DomainKind::QuadricProj: return "QuadricProj(" + fmt(s) + ")";
    case DomainKind::DiagonalCurve: return "DiagonalCurve";
    case DomainKind::InfinityCurve: return "InfinityCurve";
    }
    return "?";
}

double Membership::residual() const { return std::max(-margin, equality_residual - kQuadricTol); }

Membership contains(const DomainSpec& d, const AnyPoint& p)
{
    switch (d.kind) {
    case DomainKind::Bidisc:
        return finish(disc_margin(expect<BidiscPoint>(p, d)), 0.0);
    case DomainKind::BidiscR: {
        const auto& b = expect<BidiscPoint>(p, d);
        const double m = disc_margin(b);
        return finish(m > 0.0 ? std::min(m, d.t - rho_unchecked(b)) : m, 0.0);
    }
    case DomainKind::BidiscST: {
        const auto& b = expect<BidiscPoint>(p, d);
        const double m = disc_margin(b);
        if (m <= 0.0)
            return finish(m, 0.0);
        const double rho = rho_unchecked(b);
        return finish(std::min({m, rho - d.s, d.t - rho}), 0.0);
    }
    case DomainKind::Ball:
        return finish(1.0 - std::sqrt(expect<BallPoint>(p, d).norm2()), 0.0);
    case DomainKind::QuadricST:
        return quadric_st(expect<C3Point>(p, d), d.s, d.t);
    case DomainKind::QuadricProj: {
        if (const auto* z = std::get_if<C3Point>(&p))
            return quadric_st(*z, d.s, kInfinity);
        const auto& q = expect<ProjectivePoint>(p, d);
        if (q.at_infinity())
            return infinity_curve(q);
        return quadric_st(q.affine(), d.s, kInfinity);
    }
    case DomainKind::DiagonalCurve: {
        const auto& b = expect<BidiscPoint>(p, d);
        return finish(disc_margin(b), std::abs(b.z1 - b.z2));
    }
    case DomainKind::InfinityCurve:
        return infinity_curve(expect<ProjectivePoint>(p, d));
    }
    throw DomainError("contains: unknown domain");
}

double minkowski_form(const C3Point& z) { return std::norm(z[0]) + std::norm(z[1]) - std::norm(z[2]); }

Complex quadric_residual(const C3Point& z) { return z[0] * z[0] + z[1] * z[1] - z[2] * z[2] - 1.0; }

double im_condition(const C3Point& z) { return std::imag(z[1] * (std::conj(z[0]) + std::conj(z[2]))); }

double alpha_from_a(double a)
{
    if (!valid_unit_interval(a))
        throw DomainError("alpha_from_a: a must lie in (0, 1)");
    const double x = 1.0 / (a * a);
    return 8.0 * x * x - 8.0 * x + 1.0;
}

double a_from_alpha(double alpha)
{
    if (!(std::isfinite(alpha) && alpha > 1.0))
        throw DomainError("a_from_alpha: alpha must exceed 1");
    // x = 1/a^2 is the root > 1 of 8x^2 - 8x + (1 - alpha) = 0
    const double x = 0.5 * (1.0 + std::sqrt(1.0 + 0.5 * (alpha - 1.0)));
    return 1.0 / std::sqrt(x);
}

double eta_level(double alpha)
{
    if (!(std::isfinite(alpha) && alpha >= 1.0))
        throw DomainError("eta_level: alpha must be at least 1");
    return std::sqrt(0.5 * (alpha + 1.0));
}

double level_from_a(double a)
{
    if (!valid_unit_interval(a))
        throw DomainError("level_from_a: a must lie in (0, 1)");
    return 2.0 / (a * a) - 1.0;
}

double a_from_level(double level)
{
    if (!(std::isfinite(level) && level > 1.0))
        throw DomainError("a_from_level: level must exceed 1");
    return std::sqrt(2.0 / (level + 1.0));
}

OrbitSpec OrbitSpec::fa(double a)
{
    if (!valid_unit_interval(a))
        throw DomainError("Fa: a must lie in (0, 1)");
    return {OrbitKind::Fa, a};
}

OrbitSpec OrbitSpec::eta_level(double level)
{
    if (!(std::isfinite(level) && level > 1.0))
        throw DomainError("EtaLevel: level must exceed 1");
    return {OrbitKind::EtaLevel, level};
}

OrbitSpec OrbitSpec::ball_ellipsoid(double t)
{
    if (!valid_unit_interval(t))
        throw DomainError("BallEllipsoid: t must lie in (0, 1)");
    return {OrbitKind::BallEllipsoid, t};
}

OrbitSpec OrbitSpec::parse(const std::string& text)
{
    const auto colon = text.find(':');
    const std::string tag = text.substr(0, colon);
    if (tag == "ComplexCurve" && colon == std::string::npos)
        return ball_complex_curve();
    if (tag == "RealSlice" && colon == std::string::npos)
        return ball_real_slice();
    if (colon == std::string::npos)
        throw DomainError("orbit spec '" + text + "': expected TAG:VALUE");
    const std::string num = text.substr(colon + 1);
    char* end = nullptr;
    const double value = std::strtod(num.c_str(), &end);
    if (num.empty() || *end != '\0')
        throw DomainError("orbit spec '" + text + "': bad number");
    if (tag == "Fa")
        return fa(value);
    if (tag == "Eta")
        return eta_level(value);
    if (tag == "Ellipsoid")
        return ball_ellipsoid(value);
    throw DomainError("orbit spec '" + text + "': unknown tag");
}

std::string OrbitSpec::name() const
{
    switch (kind) {
    case OrbitKind::Fa: return "Fa:" + fmt(param);
    case OrbitKind::EtaLevel: return "Eta:" + fmt(param);
    case OrbitKind::BallEllipsoid: return "Ellipsoid:" + fmt(param);
    case OrbitKind::BallComplexCurve: return "ComplexCurve";
    case OrbitKind::BallRealSlice: return "RealSlice";
    }
    return "?";
}

double orbit_residual(const OrbitSpec& o, const AnyPoint& p)
{
    const auto mismatch = [&]() -> double {
        throw DomainError("orbit_residual: point type does not match orbit " + o.name());
    };
    switch (o.kind) {
    case OrbitKind::Fa: {
        const auto* b = std::get_if<BidiscPoint>(&p);
        return b ? std::abs(rho_unchecked(*b) - o.param) : mismatch();
    }
    case OrbitKind::EtaLevel: {
        const auto* z = std::get_if<C3Point>(&p);
        if (!z)
            return mismatch();
        return std::max({std::abs(quadric_residual(*z)), std::abs(minkowski_form(*z) - o.param),
                         std::max(0.0, -im_condition(*z))});
    }
    case OrbitKind::BallEllipsoid: {
        const auto* q = std::get_if<BallPoint>(&p);
        const double t2 = o.param * o.param;
        return q ? std::abs(std::norm(q->u) + t2 * std::norm(q->v) - t2) : mismatch();
    }
    case OrbitKind::BallComplexCurve: {
        const auto* q = std::get_if<BallPoint>(&p);
        return q ? std::abs(q->u) : mismatch();
    }
    case OrbitKind::BallRealSlice: {
        const auto* q = std::get_if<BallPoint>(&p);
        return q ? std::max(std::abs(q->u.imag()), std::abs(q->v.imag())) : mismatch();
    }
    }
    return mismatch();
}

}  // namespace bidisc
