#include "bidisc/core.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace bidisc {

void require_finite(Complex z, const char* what)
{
    if (!is_finite(z))
        throw DomainError(std::string(what) + ": non-finite value");
}

void require_in_disc(Complex z, const char* what)
{
    require_finite(z, what);
    if (std::abs(z) >= 1.0 - kBoundaryTol)
        throw DomainError(std::string(what) + ": |z| >= 1 - tol_boundary (" + to_string(z) + ")");
}

DiscPoint::DiscPoint(Complex value) : value_(value) { require_in_disc(value, "DiscPoint"); }

BidiscPoint BidiscPoint::make(Complex z1, Complex z2)
{
    require_in_disc(z1, "BidiscPoint.z1");
    require_in_disc(z2, "BidiscPoint.z2");
    return {z1, z2};
}

BallPoint BallPoint::make(Complex u, Complex v)
{
    require_finite(u, "BallPoint.u");
    require_finite(v, "BallPoint.v");
    if (std::norm(u) + std::norm(v) >= 1.0 - kBoundaryTol)
        throw DomainError("BallPoint: outside the open unit ball");
    return {u, v};
}

MobiusMap::MobiusMap(double theta, Complex a) : theta_(theta), a_(a)
{
    if (!std::isfinite(theta))
        throw DomainError("MobiusMap: non-finite theta");
    require_in_disc(a, "MobiusMap.a");
}

Complex MobiusMap::apply(Complex z) const
{
    require_in_disc(z, "mobius_apply");
    return apply_unchecked(z);
}

Complex MobiusMap::apply_unchecked(Complex z) const
{
    return std::polar(1.0, theta_) * (z - a_) / (1.0 - std::conj(a_) * z);
}

Complex MobiusMap::image_of_origin() const { return -std::polar(1.0, theta_) * a_; }

namespace {

// SU(1,1)-style representative [[p, q], [r, s]] of e^{i theta}(z - a)/(1 - conj(a) z).
struct Coeffs {
    Complex p, q, r, s;
};

Coeffs coeffs(const MobiusMap& m)
{
    const Complex half = std::polar(1.0, m.theta() / 2.0);
    return {half, -half * m.a(), -std::conj(half) * std::conj(m.a()), std::conj(half)};
}

double wrap_angle(double theta)
{
    double t = std::remainder(theta, 2.0 * std::numbers::pi);
    if (t <= -std::numbers::pi)
        t += 2.0 * std::numbers::pi;
    return t;
}

}  // namespace

MobiusMap compose(const MobiusMap& outer, const MobiusMap& inner)
{
    const Coeffs x = coeffs(outer);
    const Coeffs y = coeffs(inner);
    const Complex p = x.p * y.p + x.q * y.r;
    const Complex q = x.p * y.q + x.q * y.s;
    const Complex s = x.r * y.q + x.s * y.s;
    // (p z + q) / (r z + s) = (p/s) (z + q/p) / (1 + (r/s) z), and r/s = -conj(a).
    return MobiusMap(wrap_angle(std::arg(p / s)), -q / p);
}

MobiusMap inverse(const MobiusMap& m)
{
    return MobiusMap(wrap_angle(-m.theta()), -std::polar(1.0, m.theta()) * m.a());
}

double pseudo_hyperbolic(Complex z1, Complex z2)
{
    require_in_disc(z1, "pseudo_hyperbolic.z1");
    require_in_disc(z2, "pseudo_hyperbolic.z2");
    return std::abs((z1 - z2) / (1.0 - std::conj(z1) * z2));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

DiscPoint sample_disc(RngStream& rng, double rmax)
{
    if (!(rmax > 0.0 && rmax < 1.0))
        throw DomainError("sample_disc: rmax must lie in (0, 1)");
    for (;;) {
        const double x = rng.uniform(-rmax, rmax);
        const double y = rng.uniform(-rmax, rmax);
        if (x * x + y * y <= rmax * rmax)
            return DiscPoint({x, y});
    }
}

BidiscPoint sample_bidisc(RngStream& rng, double rmax)
{
    const Complex z1 = sample_disc(rng, rmax).value();
    const Complex z2 = sample_disc(rng, rmax).value();
    return {z1, z2};
}

BallPoint sample_ball(RngStream& rng, double rmax)
{
    if (!(rmax > 0.0 && rmax < 1.0))
        throw DomainError("sample_ball: rmax must lie in (0, 1)");
    for (;;) {
        double c[4];
        double n2 = 0.0;
        for (double& x : c) {
            x = rng.uniform(-rmax, rmax);
            n2 += x * x;
        }
        if (n2 <= rmax * rmax)
            return {{c[0], c[1]}, {c[2], c[3]}};
    }
}

MobiusMap sample_mobius(RngStream& rng, double rmax)
{
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return MobiusMap(theta, sample_disc(rng, rmax).value());
}

std::string to_string(Complex z)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
    return buf;
}

}  // namespace bidisc
