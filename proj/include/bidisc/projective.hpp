#pragma once

#include <Eigen/Dense>

#include "bidisc/core.hpp"

namespace bidisc {

using C3Point = Eigen::Vector3cd;

/// A point of CP^3 given by homogeneous coordinates (h0 : h1 : h2 : h3).
class ProjectivePoint {
public:
    explicit ProjectivePoint(const Eigen::Vector4cd& coords);
    ProjectivePoint(Complex h0, Complex h1, Complex h2, Complex h3)
        : ProjectivePoint(Eigen::Vector4cd(h0, h1, h2, h3)) {}

    /// (1 : z1 : z2 : z3)
    static ProjectivePoint from_affine(const C3Point& z);

    const Eigen::Vector4cd& coords() const { return coords_; }
    Complex operator[](int i) const { return coords_[i]; }

    double max_abs() const { return coords_.cwiseAbs().maxCoeff(); }

    /// True when |h0| is negligible relative to the other coordinates.
    bool at_infinity(double rel_tol = 1e-12) const;

    /// (h1, h2, h3) / h0; throws for points at infinity.
    C3Point affine() const;

private:
    Eigen::Vector4cd coords_;
};

/// Equality up to a nonzero scalar: every 2x2 minor of the 2x4 matrix [p; q]
/// has modulus below tol * max|p_i| * max|q_i|.
bool projective_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol = 1e-12);

/// Largest minor modulus after the same normalisation used by projective_equal.
double projective_distance(const ProjectivePoint& p, const ProjectivePoint& q);

}  // namespace bidisc
