#pragma once

#include <utility>

#include "bidisc/core.hpp"
#include "bidisc/domains.hpp"
#include "bidisc/groups.hpp"
#include "bidisc/projective.hpp"

namespace bidisc {

/// H is only evaluated where |z - w| >= kEpsDiag; closer points belong to the diagonal chart of J.
inline constexpr double kEpsDiag = 1e-6;

/// J(z, w) = (z - w : 1 - zw : i(1 + zw) : -i(z + w)).
ProjectivePoint map_J(Complex z, Complex w);

/// H(z, w) = ((1 - zw), i(1 + zw), -i(z + w)) / (z - w).
C3Point map_H(Complex z, Complex w, double eps_diag = kEpsDiag);
inline C3Point map_H(const BidiscPoint& p, double eps_diag = kEpsDiag) { return map_H(p.z1, p.z2, eps_diag); }

/// Inverse of H on the quadric domain with level > 1.
///
/// From h = H(z, w): z - w = 2 / (h1 - i h2), z + w = i h3 (z - w), zw = -(h1 + i h2)(z - w) / 2.
/// z and w are the roots of l^2 - (z + w) l + zw; the discriminant is (z - w)^2, so the roots are
/// ((z + w) +- (z - w)) / 2. The ordering that reproduces h is returned (the other gives -h).
BidiscPoint map_H_inv(const C3Point& h);

/// (z1 + z2, z1 z2)
std::pair<Complex, Complex> sym(Complex z1, Complex z2);

/// g_t(z, w) = (z / t, w)
std::pair<Complex, Complex> scale_g_t(double t, const BallPoint& p);

/// Element of Aut(D^2) of the form Phi_phi or Phi_phi o sigma.
struct BidiscAutomorphism {
    MobiusMap phi;
    bool swap = false;

    static BidiscAutomorphism diagonal(const MobiusMap& m) { return {m, false}; }
    static BidiscAutomorphism sigma() { return {MobiusMap::identity(), true}; }

    BidiscPoint operator()(const BidiscPoint& p) const;
};

/// Per-constraint residuals of a point of the quadric domain.
struct MapReport {
    C3Point image;
    double quadric = 0.0;       // |z1^2 + z2^2 - z3^2 - 1|
    double im_condition = 0.0;  // Im(z2 (conj z1 + conj z3))
    double level = 0.0;         // |z1|^2 + |z2|^2 - |z3|^2
};

MapReport report_H(Complex z, Complex w, double eps_diag = kEpsDiag);

/// Real 3x3 matrix M with M H(p) = H(Phi(p)), fitted by least squares.
struct ConjugationFit {
    BidiscAutomorphism source;
    Mat3R matrix = Mat3R::Identity();
    double fit_residual = 0.0;         // max over held-out points of ||M H(p) - H(Phi(p))||
    double membership_residual = 0.0;  // ||M^T I21 M - I21||_F
    double determinant = 1.0;
    double condition = 1.0;            // condition number of the normal equations
};

inline constexpr int kFitPoints = 6;
inline constexpr int kHeldOutPoints = 4;
inline constexpr double kFitConditionLimit = 1e8;

/// Throws DomainError when no well-conditioned sample set is found after a fixed number of draws.
ConjugationFit conjugate_fit(const BidiscAutomorphism& phi, RngStream& rng, double rmax = kDefaultRmax);

}  // namespace bidisc
