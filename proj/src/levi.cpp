#include "bidisc/levi.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bidisc {

namespace {

double effective_step(const CVector& p, double h) { return h * std::max(1.0, p.cwiseAbs().maxCoeff()); }

// Real coordinate c of C^n: c = 2j is Re z_j, c = 2j + 1 is Im z_j.
CVector shifted(const CVector& p, int c, double delta)
{
    CVector q = p;
    if (c % 2 == 0)
        q[c / 2] += delta;
    else
        q[c / 2] += Complex(0.0, delta);
    return q;
}

int numerical_rank(const Eigen::MatrixXd& m)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0)
        return 0;
    const double cut = 1e-10 * sv[0];
    return static_cast<int>((sv.array() > cut).count());
}

}  // namespace

DefiningFunction DefiningFunction::fa(double a)
{
    if (!(std::isfinite(a) && a > 0.0 && a < 1.0))
        throw DomainError("Fa: a must lie in (0, 1)");
    return {SurfaceKind::Fa, a};
}

DefiningFunction DefiningFunction::eta_level(double level)
{
    if (!(std::isfinite(level) && level > 1.0))
        throw DomainError("EtaLevelC3: level must exceed 1");
    return {SurfaceKind::EtaLevelC3, level};
}

DefiningFunction DefiningFunction::sphere() { return {SurfaceKind::Sphere, 1.0}; }

DefiningFunction DefiningFunction::ellipsoid(double t)
{
    if (!(std::isfinite(t) && t > 0.0 && t < 1.0))
        throw DomainError("Ellipsoid: t must lie in (0, 1)");
    return {SurfaceKind::Ellipsoid, t};
}

DefiningFunction DefiningFunction::levi_flat_control(double c)
{
    if (!(std::isfinite(c) && c > 0.0 && c < 1.0))
        throw DomainError("LeviFlatControl: c must lie in (0, 1)");
    return {SurfaceKind::LeviFlatControl, c};
}

std::string DefiningFunction::name() const
{
    switch (kind_) {
    case SurfaceKind::Fa: return "Fa(" + std::to_string(param_) + ")";
    case SurfaceKind::EtaLevelC3: return "EtaLevelC3(" + std::to_string(param_) + ")";
    case SurfaceKind::Sphere: return "Sphere";
    case SurfaceKind::Ellipsoid: return "Ellipsoid(" + std::to_string(param_) + ")";
    case SurfaceKind::LeviFlatControl: return "LeviFlatControl(" + std::to_string(param_) + ")";
    }
    return "?";
}

double DefiningFunction::operator()(const CVector& p) const
{
    switch (kind_) {
    case SurfaceKind::Fa: {
        const Complex d = p[0] - p[1];
        const Complex e = 1.0 - std::conj(p[0]) * p[1];
        return std::norm(d) - param_ * param_ * std::norm(e);
    }
    case SurfaceKind::EtaLevelC3:
        return param_ - (std::norm(p[0]) + std::norm(p[1]) - std::norm(p[2]));
    case SurfaceKind::Sphere:
        return std::norm(p[0]) + std::norm(p[1]) - 1.0;
    case SurfaceKind::Ellipsoid: {
        const double t2 = param_ * param_;
        return std::norm(p[0]) + t2 * std::norm(p[1]) - t2;
    }
    case SurfaceKind::LeviFlatControl:
        return std::norm(p[0]) - param_ * param_;
    }
    return 0.0;
}

void DefiningFunction::check_ambient(const CVector& p, double step) const
{
    if (p.size() != dimension())
        throw DomainError(name() + ": point has the wrong dimension");
    for (int i = 0; i < p.size(); ++i)
        require_finite(p[i], "DefiningFunction");
    if (kind_ == SurfaceKind::Fa) {
        for (int i = 0; i < 2; ++i)
            if (std::abs(p[i]) + 2.0 * step >= 1.0 - kBoundaryTol)
                throw DomainError(name() + ": finite-difference stencil leaves the bidisc");
    }
}

CMatrix DefiningFunction::holomorphic_constraints(const CVector& p) const
{
    if (kind_ != SurfaceKind::EtaLevelC3)
        return CMatrix(0, dimension());
    CMatrix g(1, 3);
    g << 2.0 * p[0], 2.0 * p[1], -2.0 * p[2];
    return g;
}

CVector DefiningFunction::closed_form_gradient(const CVector& p) const
{
    CVector g(dimension());
    switch (kind_) {
    case SurfaceKind::Fa: {
        const double a2 = param_ * param_;
        const Complex d = p[0] - p[1];
        const Complex e = 1.0 - std::conj(p[0]) * p[1];
        g << std::conj(d) + a2 * std::conj(p[1]) * e, -std::conj(d) + a2 * std::conj(p[0]) * std::conj(e);
        break;
    }
    case SurfaceKind::EtaLevelC3:
        g << -std::conj(p[0]), -std::conj(p[1]), std::conj(p[2]);
        break;
    case SurfaceKind::Sphere:
        g << std::conj(p[0]), std::conj(p[1]);
        break;
    case SurfaceKind::Ellipsoid:
        g << std::conj(p[0]), param_ * param_ * std::conj(p[1]);
        break;
    case SurfaceKind::LeviFlatControl:
        g << std::conj(p[0]), 0.0;
        break;
    }
    return g;
}

CMatrix DefiningFunction::closed_form_hessian(const CVector& p) const
{
    // entry (j, k) = d^2 r / dconj(z_j) dz_k, so that v^* H v is the Levi form
    const int n = dimension();
    CMatrix h = CMatrix::Zero(n, n);
    switch (kind_) {
    case SurfaceKind::Fa: {
        const double a2 = param_ * param_;
        h(0, 0) = 1.0 - a2 * std::norm(p[1]);
        h(1, 1) = 1.0 - a2 * std::norm(p[0]);
        h(0, 1) = -1.0 + a2 * (1.0 - p[0] * std::conj(p[1]));
        h(1, 0) = std::conj(h(0, 1));
        break;
    }
    case SurfaceKind::EtaLevelC3:
        h.diagonal() << -1.0, -1.0, 1.0;
        break;
    case SurfaceKind::Sphere:
        h.diagonal() << 1.0, 1.0;
        break;
    case SurfaceKind::Ellipsoid:
        h.diagonal() << 1.0, param_ * param_;
        break;
    case SurfaceKind::LeviFlatControl:
        h(0, 0) = 1.0;
        break;
    }
    return h;
}

CVector wirtinger_gradient(const DefiningFunction& f, const CVector& p, double h)
{
    const double step = effective_step(p, h);
    f.check_ambient(p, step);
    const int n = f.dimension();
    CVector g(n);
    for (int j = 0; j < n; ++j) {
        const double rx = (f(shifted(p, 2 * j, step)) - f(shifted(p, 2 * j, -step))) / (2.0 * step);
        const double ry = (f(shifted(p, 2 * j + 1, step)) - f(shifted(p, 2 * j + 1, -step))) / (2.0 * step);
        g[j] = 0.5 * Complex(rx, -ry);
    }
    return g;
}

HessianResult complex_hessian_fd(const DefiningFunction& f, const CVector& p, double h)
{
    const double step = effective_step(p, h);
    f.check_ambient(p, step);
    const int n = f.dimension();
    const int m = 2 * n;
    const double f0 = f(p);

    Eigen::MatrixXd d(m, m);
    for (int a = 0; a < m; ++a) {
        d(a, a) = (f(shifted(p, a, step)) - 2.0 * f0 + f(shifted(p, a, -step))) / (step * step);
        for (int b = a + 1; b < m; ++b) {
            const CVector pa = shifted(p, a, step), ma = shifted(p, a, -step);
            const double v = f(shifted(pa, b, step)) - f(shifted(pa, b, -step)) - f(shifted(ma, b, step)) +
                             f(shifted(ma, b, -step));
            d(a, b) = d(b, a) = v / (4.0 * step * step);
        }
    }

    // d^2/dconj(z_j) dz_k = (d_xj + i d_yj)(d_xk - i d_yk) / 4
    CMatrix raw(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
            raw(j, k) = 0.25 * Complex(d(xj, xk) + d(yj, yk), d(yj, xk) - d(xj, yk));
        }
    HessianResult out;
    out.hermitian_defect = (raw - raw.adjoint()).norm();
    out.hessian = 0.5 * (raw + raw.adjoint());
    return out;
}

namespace {

CVector tangent_from_gradient(const DefiningFunction& f, const CVector& p, const CVector& grad)
{
    if (grad.norm() <= kRegularGradient)
        throw DomainError(f.name() + ": degenerate gradient, point is not regular");
    const CMatrix extra = f.holomorphic_constraints(p);
    CMatrix g(1 + extra.rows(), f.dimension());
    g.row(0) = grad.transpose();
    if (extra.rows() > 0)
        g.bottomRows(extra.rows()) = extra;

    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullV);
    CVector v = svd.matrixV().col(f.dimension() - 1);
    v.normalize();
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) {
            v *= std::abs(v[i]) / v[i];
            v[i] = std::abs(v[i]);
            break;
        }
    }
    return v;
}

}  // namespace

CVector complex_tangent(const DefiningFunction& f, const CVector& p, FdSteps steps)
{
    return tangent_from_gradient(f, p, wirtinger_gradient(f, p, steps.gradient));
}

double levi_restricted(const DefiningFunction& f, const CVector& p, FdSteps steps)
{
    f.check_ambient(p, effective_step(p, std::max(steps.gradient, steps.hessian)));
    if (std::abs(f(p)) >= 1e-8 * std::max(1.0, p.squaredNorm()))
        throw DomainError(f.name() + ": point is not on the hypersurface");
    const CVector v = complex_tangent(f, p, steps);
    const CMatrix hess = complex_hessian(f, p, steps.hessian);
    return (v.adjoint() * hess * v)(0, 0).real();
}

std::string to_string(LeviClass c)
{
    switch (c) {
    case LeviClass::StronglyPseudoconvex: return "strongly-pseudoconvex";
    case LeviClass::LeviFlat: return "levi-flat";
    case LeviClass::Indefinite: return "indefinite";
    case LeviClass::DegenerateGradient: return "degenerate-gradient";
    }
    return "?";
}

LeviClass classify_levi(double value)
{
    if (std::abs(value) <= kLeviDeadBand)
        return LeviClass::LeviFlat;
    return value > 0.0 ? LeviClass::StronglyPseudoconvex : LeviClass::Indefinite;
}

LeviReport levi_report(const DefiningFunction& f, const CVector& p, FdSteps steps)
{
    LeviReport r;
    r.point = p;
    r.gradient = wirtinger_gradient(f, p, steps.gradient);
    const HessianResult hr = complex_hessian_fd(f, p, steps.hessian);
    r.hessian = hr.hessian;
    r.hermitian_defect = hr.hermitian_defect;
    if (r.gradient.norm() <= kRegularGradient) {
        r.classification = LeviClass::DegenerateGradient;
        return r;
    }
    r.tangent = tangent_from_gradient(f, p, r.gradient);
    r.tangent_residual = std::abs(r.gradient.conjugate().dot(r.tangent));
    r.levi_value = (r.tangent.adjoint() * r.hessian * r.tangent)(0, 0).real();
    r.classification = classify_levi(r.levi_value);
    return r;
}

TotallyRealResult totally_real_check(std::span<const CVector> tangent_basis)
{
    const int k = static_cast<int>(tangent_basis.size());
    if (k == 0)
        throw DomainError("totally_real_check: empty basis");
    const int n = static_cast<int>(tangent_basis.front().size());
    Eigen::MatrixXd span(2 * n, k), ispan(2 * n, k);
    for (int c = 0; c < k; ++c) {
        const CVector& v = tangent_basis[c];
        if (v.size() != n)
            throw DomainError("totally_real_check: basis vectors differ in dimension");
        for (int j = 0; j < n; ++j) {
            span(2 * j, c) = v[j].real();
            span(2 * j + 1, c) = v[j].imag();
            // i (x + i y) = -y + i x
            ispan(2 * j, c) = -v[j].imag();
            ispan(2 * j + 1, c) = v[j].real();
        }
    }
    if (numerical_rank(span) < k)
        throw DomainError("totally_real_check: rank-deficient tangent basis");
    Eigen::MatrixXd both(2 * n, 2 * k);
    both << span, ispan;
    const int dim = 2 * k - numerical_rank(both);
    return {dim == 0, dim};
}

}  // namespace bidisc
