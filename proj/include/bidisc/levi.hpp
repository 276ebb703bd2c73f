#pragma once

#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "bidisc/core.hpp"

namespace bidisc {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Finite-difference steps, each scaled by max(1, |p|_inf) at the evaluation point.
/// Second differences use the larger step: at 1e-5 their roundoff floor is ~1e-6.
struct FdSteps {
    double gradient = 1e-5;
    double hessian = 1e-4;
};
/// Levi values within this band of zero are classified Levi-flat.
inline constexpr double kLeviDeadBand = 1e-4;
/// Gradients below this norm make a point non-regular.
inline constexpr double kRegularGradient = 1e-8;

enum class SurfaceKind {
    Fa,               // |z1 - z2|^2 - a^2 |1 - conj(z1) z2|^2 in D^2
    EtaLevelC3,       // level - (|z1|^2 + |z2|^2 - |z3|^2) on the quadric z1^2 + z2^2 - z3^2 = 1
    Sphere,           // |u|^2 + |v|^2 - 1
    Ellipsoid,        // |u|^2 + t^2 |v|^2 - t^2
    LeviFlatControl,  // |z1|^2 - c^2
};

/// Real defining function of a registered hypersurface, negative on the side the
/// hypersurface is pseudoconvex towards.
class DefiningFunction {
public:
    static DefiningFunction fa(double a);
    static DefiningFunction eta_level(double level);
    static DefiningFunction sphere();
    static DefiningFunction ellipsoid(double t);
    static DefiningFunction levi_flat_control(double c);

    SurfaceKind kind() const { return kind_; }
    double param() const { return param_; }
    int dimension() const { return kind_ == SurfaceKind::EtaLevelC3 ? 3 : 2; }
    std::string name() const;

    double operator()(const CVector& p) const;

    /// Throws DomainError when the finite-difference stencil around p leaves the ambient domain.
    void check_ambient(const CVector& p, double step) const;

    /// Holomorphic gradients of extra complex constraints cutting out the ambient manifold
    /// (the quadric for EtaLevelC3); empty otherwise.
    CMatrix holomorphic_constraints(const CVector& p) const;

    /// Closed forms, registered for every surface kind; used to cross-check the FD routes.
    CVector closed_form_gradient(const CVector& p) const;
    CMatrix closed_form_hessian(const CVector& p) const;

private:
    DefiningFunction(SurfaceKind kind, double param) : kind_(kind), param_(param) {}

    SurfaceKind kind_;
    double param_;
};

/// dr/dz_j = (d/dx_j - i d/dy_j) r / 2, central differences.
CVector wirtinger_gradient(const DefiningFunction& f, const CVector& p, double h = FdSteps{}.gradient);

struct HessianResult {
    CMatrix hessian;         // Hermitian-symmetrised
    double hermitian_defect; // ||raw - raw^*||_F before symmetrisation
};

/// Entry (j, k) = d^2 r / dconj(z_j) dz_k from second-order central differences in real coordinates.
HessianResult complex_hessian_fd(const DefiningFunction& f, const CVector& p, double h = FdSteps{}.hessian);
inline CMatrix complex_hessian(const DefiningFunction& f, const CVector& p, double h = FdSteps{}.hessian)
{
    return complex_hessian_fd(f, p, h).hessian;
}

/// Unit v with sum_j (dr/dz_j) v_j = 0 (and tangent to the ambient quadric for EtaLevelC3);
/// the phase is fixed so the first nonzero component is real positive.
CVector complex_tangent(const DefiningFunction& f, const CVector& p, FdSteps steps = {});

/// v^* Hess v on the unit complex tangent; requires |r(p)| < 1e-8 max(1, |p|^2).
double levi_restricted(const DefiningFunction& f, const CVector& p, FdSteps steps = {});

enum class LeviClass { StronglyPseudoconvex, LeviFlat, Indefinite, DegenerateGradient };

std::string to_string(LeviClass c);
LeviClass classify_levi(double value);

struct LeviReport {
    CVector point;
    CVector gradient;
    CMatrix hessian;
    double hermitian_defect = 0.0;
    CVector tangent;
    double tangent_residual = 0.0;  // |<dr, v>|
    double levi_value = 0.0;
    LeviClass classification = LeviClass::DegenerateGradient;
};

/// Full report; degenerate gradients are reported rather than thrown.
LeviReport levi_report(const DefiningFunction& f, const CVector& p, FdSteps steps = {});

struct TotallyRealResult {
    bool totally_real;
    int intersection_dim;  // dim_R(span ∩ i span)
};

/// Decides whether the real span of `tangent_basis` (vectors of C^n) meets its image
/// under multiplication by i only in zero. Throws on a rank-deficient basis.
TotallyRealResult totally_real_check(std::span<const CVector> tangent_basis);

}  // namespace bidisc
