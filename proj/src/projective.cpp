#include "bidisc/projective.hpp"

#include <algorithm>

namespace bidisc {

ProjectivePoint::ProjectivePoint(const Eigen::Vector4cd& coords) : coords_(coords)
{
    for (int i = 0; i < 4; ++i)
        require_finite(coords_[i], "ProjectivePoint");
    if (coords_.cwiseAbs().maxCoeff() == 0.0)
        throw DomainError("ProjectivePoint: all homogeneous coordinates are zero");
}

ProjectivePoint ProjectivePoint::from_affine(const C3Point& z) { return ProjectivePoint(1.0, z[0], z[1], z[2]); }

bool ProjectivePoint::at_infinity(double rel_tol) const { return std::abs(coords_[0]) <= rel_tol * max_abs(); }

C3Point ProjectivePoint::affine() const
{
    if (std::abs(coords_[0]) == 0.0)
        throw DomainError("ProjectivePoint::affine: point lies on the hyperplane at infinity");
    return coords_.tail<3>() / coords_[0];
}

double projective_distance(const ProjectivePoint& p, const ProjectivePoint& q)
{
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            worst = std::max(worst, std::abs(p[i] * q[j] - p[j] * q[i]));
    return worst / (p.max_abs() * q.max_abs());
}

bool projective_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol)
{
    return projective_distance(p, q) < tol;
}

}  // namespace bidisc
