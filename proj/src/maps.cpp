#include "bidisc/maps.hpp"

#include <array>
#include <cmath>

namespace bidisc {

namespace {

constexpr Complex kI{0.0, 1.0};

// Fit points stay away from the diagonal so H is O(1) and the normal equations are well scaled.
constexpr double kFitMinSeparation = 0.1;
constexpr int kFitAttempts = 32;

}  // namespace

ProjectivePoint map_J(Complex z, Complex w)
{
    require_in_disc(z, "map_J.z");
    require_in_disc(w, "map_J.w");
    const Complex zw = z * w;
    return ProjectivePoint(z - w, 1.0 - zw, kI * (1.0 + zw), -kI * (z + w));
}

C3Point map_H(Complex z, Complex w, double eps_diag)
{
    require_in_disc(z, "map_H.z");
    require_in_disc(w, "map_H.w");
    const Complex d = z - w;
    if (std::abs(d) < eps_diag)
        throw DomainError("map_H: point within eps_diag of the diagonal");
    const Complex zw = z * w;
    return C3Point((1.0 - zw) / d, kI * (1.0 + zw) / d, -kI * (z + w) / d);
}

BidiscPoint map_H_inv(const C3Point& h)
{
    for (int i = 0; i < 3; ++i)
        require_finite(h[i], "map_H_inv");
    if (std::abs(quadric_residual(h)) >= kQuadricTol * std::max(1.0, h.squaredNorm()))
        throw DomainError("map_H_inv: point is off the quadric z1^2 + z2^2 - z3^2 = 1");
    const Complex denom = h[0] - kI * h[1];
    if (std::abs(denom) < 1e-12 * std::max(1.0, h.norm()))
        throw DomainError("map_H_inv: h1 - i h2 vanishes; point is not in the image of H");
    const Complex diff = 2.0 / denom;
    const Complex sum = kI * h[2] * diff;

    const std::array<BidiscPoint, 2> candidates{BidiscPoint{0.5 * (sum + diff), 0.5 * (sum - diff)},
                                                BidiscPoint{0.5 * (sum - diff), 0.5 * (sum + diff)}};
    const BidiscPoint* best = nullptr;
    double best_err = kInfinity;
    for (const auto& c : candidates) {
        if (std::abs(c.z1) >= 1.0 - kBoundaryTol || std::abs(c.z2) >= 1.0 - kBoundaryTol)
            continue;
        const double err = (map_H(c.z1, c.z2, 0.0) - h).norm();
        if (err < best_err) {
            best_err = err;
            best = &c;
        }
    }
    if (!best)
        throw DomainError("map_H_inv: preimage lies outside the bidisc");
    if (best_err > 1e-8 * std::max(1.0, h.norm()))
        throw DomainError("map_H_inv: no root ordering reproduces the input");
    return *best;
}

std::pair<Complex, Complex> sym(Complex z1, Complex z2) { return {z1 + z2, z1 * z2}; }

std::pair<Complex, Complex> scale_g_t(double t, const BallPoint& p)
{
    if (!(std::isfinite(t) && t > 0.0 && t < 1.0))
        throw DomainError("scale_g_t: t must lie in (0, 1)");
    return {p.u / t, p.v};
}

BidiscPoint BidiscAutomorphism::operator()(const BidiscPoint& p) const
{
    const BidiscPoint q = swap ? p.swapped() : p;
    return {phi.apply(q.z1), phi.apply(q.z2)};
}

MapReport report_H(Complex z, Complex w, double eps_diag)
{
    MapReport r;
    r.image = map_H(z, w, eps_diag);
    r.quadric = std::abs(quadric_residual(r.image));
    r.im_condition = im_condition(r.image);
    r.level = minkowski_form(r.image);
    return r;
}

ConjugationFit conjugate_fit(const BidiscAutomorphism& phi, RngStream& rng, double rmax)
{
    constexpr int kTotal = kFitPoints + kHeldOutPoints;
    for (int attempt = 0; attempt < kFitAttempts; ++attempt) {
        std::array<C3Point, kTotal> src, dst;
        for (int i = 0; i < kTotal; ++i) {
            BidiscPoint p;
            do {
                p = sample_bidisc(rng, rmax);
            } while (std::abs(p.z1 - p.z2) < kFitMinSeparation);
            src[i] = map_H(p);
            dst[i] = map_H(phi(p));
        }

        // Each row m of M satisfies m . Re h = Re h'_row and m . Im h = Im h'_row.
        Eigen::Matrix<double, 2 * kFitPoints, 3> design;
        Eigen::Matrix<double, 2 * kFitPoints, 3> rhs;
        for (int i = 0; i < kFitPoints; ++i) {
            design.row(2 * i) = src[i].real().transpose();
            design.row(2 * i + 1) = src[i].imag().transpose();
            rhs.row(2 * i) = dst[i].real().transpose();
            rhs.row(2 * i + 1) = dst[i].imag().transpose();
        }
        const Mat3R normal = design.transpose() * design;
        Eigen::SelfAdjointEigenSolver<Mat3R> eig(normal, Eigen::EigenvaluesOnly);
        const double lo = eig.eigenvalues().minCoeff();
        const double cond = lo > 0.0 ? eig.eigenvalues().maxCoeff() / lo : kInfinity;
        if (!(cond < kFitConditionLimit))
            continue;

        ConjugationFit fit;
        fit.source = phi;
        fit.matrix = normal.ldlt().solve(design.transpose() * rhs).transpose();
        fit.condition = cond;
        for (int i = kFitPoints; i < kTotal; ++i) {
            const C3Point pred = fit.matrix.cast<Complex>() * src[i];
            fit.fit_residual = std::max(fit.fit_residual, (pred - dst[i]).norm());
        }
        fit.membership_residual = o21_residual(fit.matrix);
        fit.determinant = fit.matrix.determinant();
        return fit;
    }
    throw DomainError("conjugate_fit: sample configuration stayed ill-conditioned");
}

}  // namespace bidisc
