#include "bidisc/groups.hpp"

#include <cmath>
#include <numbers>

namespace bidisc {

const Mat3R& signature_i21()
{
    static const Mat3R i21 = Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal();
    return i21;
}

Su21Residual su21_residual(const Mat3C& a)
{
    const Mat3C i21 = signature_i21().cast<Complex>();
    return {(a.adjoint() * i21 * a - i21).norm(), std::abs(a.determinant() - 1.0)};
}

double o21_residual(const Mat3R& a) { return (a.transpose() * signature_i21() * a - signature_i21()).norm(); }

bool is_so21_plus(const Mat3R& a, double tol)
{
    return o21_residual(a) < tol && std::abs(a.determinant() - 1.0) < tol && a(2, 2) > 0.0;
}

Mat3C su11_embed(Complex alpha, Complex beta, double tol)
{
    require_finite(alpha, "su11_embed.alpha");
    require_finite(beta, "su11_embed.beta");
    if (std::abs(std::norm(alpha) - std::norm(beta) - 1.0) >= tol)
        throw DomainError("su11_embed: |alpha|^2 - |beta|^2 != 1");
    Mat3C m = Mat3C::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = alpha;
    m(1, 2) = beta;
    m(2, 1) = std::conj(beta);
    m(2, 2) = std::conj(alpha);
    return m;
}

Mat3C su11_sample(RngStream& rng, double smax)
{
    const double s = rng.uniform(0.0, smax);
    const double t1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double t2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return su11_embed(std::polar(std::cosh(s), t1), std::polar(std::sinh(s), t2), 1e-6);
}

BallPoint ball_action(const Mat3C& a, const BallPoint& p)
{
    const Su21Residual res = su21_residual(a);
    if (!res.ok())
        throw DomainError("ball_action: matrix is not in SU(2,1)");
    if (p.norm2() >= 1.0)
        throw DomainError("ball_action: point outside the unit ball");
    const Eigen::Vector3cd h = a * Eigen::Vector3cd(p.u, p.v, 1.0);
    if (std::abs(h[2]) < 1e-12)
        throw DomainError("ball_action: vanishing denominator");
    return {h[0] / h[2], h[1] / h[2]};
}

BallPoint ball_action(const Mat3R& a, const BallPoint& p)
{
    if (o21_residual(a) >= kMembershipTol)
        throw DomainError("ball_action: matrix is not in O(2,1)");
    const Mat3R b = a.determinant() < 0.0 ? Mat3R(-a) : a;
    return ball_action(Mat3C(b.cast<Complex>()), p);
}

Mat3R so21_rotation(double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    Mat3R m;
    m << c, -s, 0.0,
         s, c, 0.0,
         0.0, 0.0, 1.0;
    return m;
}

Mat3R so21_boost(double xi)
{
    const double c = std::cosh(xi), s = std::sinh(xi);
    Mat3R m;
    m << 1.0, 0.0, 0.0,
         0.0, c, s,
         0.0, s, c;
    return m;
}

Mat3R so21_sample(RngStream& rng, double xi_max)
{
    const double t1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double t2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    // inverse CDF of Exp(1) conditioned on [0, xi_max]
    const double xi = -std::log1p(-rng.uniform() * -std::expm1(-xi_max));
    return so21_rotation(t1) * so21_boost(xi) * so21_rotation(t2);
}

C3Point c3_action(const Mat3R& a, const C3Point& z) { return a.cast<Complex>() * z; }

ProjectivePoint cp3_action(const Mat3R& a, const ProjectivePoint& p)
{
    Eigen::Vector4cd h;
    h[0] = p[0];
    h.tail<3>() = a.cast<Complex>() * p.coords().tail<3>();
    return ProjectivePoint(h);
}

Mat3R o21_point_matrix(double z, double w)
{
    if (!std::isfinite(z) || !std::isfinite(w))
        throw DomainError("o21_point_matrix: non-finite input");
    const double n2 = z * z + w * w;
    if (n2 == 0.0)
        throw DomainError("o21_point_matrix: (0, 0) is reached by the identity I3");
    if (n2 >= 1.0 - kBoundaryTol)
        throw DomainError("o21_point_matrix: point outside the unit ball");
    const double alpha = 1.0 / std::sqrt(n2);
    const double k = 1.0 / std::sqrt(n2 * (1.0 - n2));
    const double gamma = 1.0 / std::sqrt(1.0 - n2);
    Mat3R b;
    b << -alpha * w, k * z, gamma * z,
          alpha * z, k * w, gamma * w,
          0.0, k * n2, gamma;
    return b;
}

Mat3R o21_point_matrix(const BallPoint& p)
{
    if (p.u.imag() != 0.0 || p.v.imag() != 0.0)
        throw DomainError("o21_point_matrix: point is not in the real slice");
    return o21_point_matrix(p.u.real(), p.v.real());
}

double su11_orbit_invariant(const BallPoint& p)
{
    if (p.norm2() >= 1.0)
        throw DomainError("su11_orbit_invariant: point outside the unit ball");
    return std::abs(p.u) / std::sqrt(1.0 - std::norm(p.v));
}

}  // namespace bidisc
