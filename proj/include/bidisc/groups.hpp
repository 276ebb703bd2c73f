#pragma once

#include <Eigen/Dense>

#include "bidisc/core.hpp"
#include "bidisc/projective.hpp"

namespace bidisc {

using Mat2C = Eigen::Matrix2cd;
using Mat3C = Eigen::Matrix3cd;
using Mat3R = Eigen::Matrix3d;

/// Residual threshold for accepting externally supplied group elements.
inline constexpr double kMembershipTol = 1e-9;
/// Internally constructed elements are expected to meet this.
inline constexpr double kConstructedTol = 1e-12;

/// diag(1, 1, -1)
const Mat3R& signature_i21();

struct Su21Residual {
    double form;  // ||A* I21 A - I21||_F
    double det;   // |det A - 1|

    bool ok(double tol = kMembershipTol) const { return form < tol && det < tol; }
};

Su21Residual su21_residual(const Mat3C& a);

/// ||A^T I21 A - I21||_F
double o21_residual(const Mat3R& a);

/// det A = 1 and A(2,2) > 0, on top of O(2,1) membership.
bool is_so21_plus(const Mat3R& a, double tol = kMembershipTol);

/// The copy [[1,0,0],[0,alpha,beta],[0,conj(beta),conj(alpha)]] of SU(1,1) in SU(2,1).
/// Throws unless | |alpha|^2 - |beta|^2 - 1 | < tol.
Mat3C su11_embed(Complex alpha, Complex beta, double tol = kMembershipTol);

/// Random SU(1,1) element: alpha = cosh(s) e^{i t1}, beta = sinh(s) e^{i t2}, s <= smax.
Mat3C su11_sample(RngStream& rng, double smax = 3.0);

/// Fractional linear action (a1 u + a2 v + a3, b1 u + b2 v + b3) / (c1 u + c2 v + c3).
BallPoint ball_action(const Mat3C& a, const BallPoint& p);

/// Action of a real O(2,1) element; elements with det = -1 act through -A, which lies in SU(2,1).
BallPoint ball_action(const Mat3R& a, const BallPoint& p);

/// Rotation by theta in the (x1, x2)-plane.
Mat3R so21_rotation(double theta);
/// Hyperbolic rotation by rapidity xi in the (x2, x3)-plane.
Mat3R so21_boost(double xi);

/// Cartan decomposition rotation(t1) boost(xi) rotation(t2): thetas uniform, xi truncated
/// exponential (rate 1) capped at xi_max.
Mat3R so21_sample(RngStream& rng, double xi_max = 3.0);

/// Linear action (z1, z2, z3) -> A (z1, z2, z3).
C3Point c3_action(const Mat3R& a, const C3Point& z);

/// Block action (1 (+) A) on homogeneous coordinates.
ProjectivePoint cp3_action(const Mat3R& a, const ProjectivePoint& p);

/// O(2,1) element B with B . (0, 0) = (z, w) for a real ball point (z, w) != (0, 0).
Mat3R o21_point_matrix(double z, double w);
/// Same, for a ball point whose coordinates must be real.
Mat3R o21_point_matrix(const BallPoint& p);

/// The unique t in [0, 1) with (u, v) in the SU(1,1)-orbit of (t, 0): t = |u| / sqrt(1 - |v|^2).
double su11_orbit_invariant(const BallPoint& p);

}  // namespace bidisc
