#include "bidisc/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "bidisc/groups.hpp"
#include "bidisc/levi.hpp"
#include "bidisc/maps.hpp"

namespace bidisc {

namespace {

struct SampleOutcome {
    double residual = 0.0;
    bool hard_failure = false;
    bool skipped = false;
    std::string input;
    std::string detail;
    std::optional<double> monitored;
};

enum class Extreme { None, Min, Max };

struct Suite {
    std::string id;
    std::string anchor;
    double tolerance;
    Extreme extreme = Extreme::None;
    std::string monitored_name;
    std::optional<std::size_t> fixed_count;  // grids ignore cfg.samples
    std::function<SampleOutcome(std::size_t, RngStream&, const SuiteConfig&)> sample;
};

std::string g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string describe(const BidiscPoint& p) { return "(" + to_string(p.z1) + ", " + to_string(p.z2) + ")"; }
std::string describe(const BallPoint& p) { return "(" + to_string(p.u) + ", " + to_string(p.v) + ")"; }
std::string describe(const MobiusMap& m) { return "mobius(theta=" + g17(m.theta()) + ", a=" + to_string(m.a()) + ")"; }

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

BidiscPoint sample_off_diagonal(RngStream& rng, const SuiteConfig& cfg)
{
    for (;;) {
        const BidiscPoint p = sample_bidisc(rng, cfg.rmax);
        if (std::abs(p.z1 - p.z2) >= cfg.eps_diag)
            return p;
    }
}

// Point Phi_phi(a, 0) of the leaf rho = a with both coordinates within rmax.
BidiscPoint sample_leaf(double a, RngStream& rng, double rmax)
{
    for (;;) {
        const MobiusMap m = sample_mobius(rng, rmax);
        const BidiscPoint p{m.apply_unchecked(a), m.apply_unchecked(0.0)};
        if (std::abs(p.z1) <= rmax && std::abs(p.z2) <= rmax)
            return p;
    }
}

CVector to_cvector(std::initializer_list<Complex> xs)
{
    CVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (Complex x : xs)
        v[i++] = x;
    return v;
}

CVector to_cvector(const C3Point& z) { return CVector(z); }

// Levi value recomputed from the registered closed-form gradient and Hessian.
double closed_form_levi(const DefiningFunction& f, const CVector& p)
{
    const CVector grad = f.closed_form_gradient(p);
    const CMatrix extra = f.holomorphic_constraints(p);
    CMatrix g(1 + extra.rows(), f.dimension());
    g.row(0) = grad.transpose();
    if (extra.rows() > 0)
        g.bottomRows(extra.rows()) = extra;
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullV);
    const CVector v = svd.matrixV().col(f.dimension() - 1).normalized();
    return (v.adjoint() * f.closed_form_hessian(p) * v)(0, 0).real();
}

SampleOutcome levi_sample(const DefiningFunction& f, const CVector& p, double threshold)
{
    SampleOutcome out;
    const double fd = levi_restricted(f, p);
    const double exact = closed_form_levi(f, p);
    out.residual = std::abs(fd - exact);
    out.monitored = fd;
    if (!(fd > threshold)) {
        out.hard_failure = true;
        out.detail = "levi value " + g17(fd) + " not above " + g17(threshold) + " on " + f.name();
    }
    return out;
}

Mat3R boost13(double xi)
{
    const double c = std::cosh(xi), s = std::sinh(xi);
    Mat3R m;
    m << c, 0.0, s,
         0.0, 1.0, 0.0,
         s, 0.0, c;
    return m;
}

std::vector<Suite> build_registry()
{
    std::vector<Suite> s;

    s.push_back({"rho-invariance", "|(phi(z)-phi(w))/(1-conj(phi(z))phi(w))| = |(z-w)/(1-conj(z)w)|, phi in Aut(D)",
                 1e-10, Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const MobiusMap m = sample_mobius(rng, cfg.rmax);
                     const Complex z = sample_disc(rng, cfg.rmax).value();
                     const Complex w = sample_disc(rng, cfg.rmax).value();
                     SampleOutcome out;
                     out.input = describe(m) + " z=" + to_string(z) + " w=" + to_string(w);
                     out.residual = std::abs(pseudo_hyperbolic(m(z), m(w)) - pseudo_hyperbolic(z, w));
                     return out;
                 }});

    s.push_back({"H-quadric", "H(z,w) = ((1-zw), i(1+zw), -i(z+w))/(z-w) satisfies z1^2+z2^2-z3^2 = 1", 1e-10,
                 Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const BidiscPoint p = sample_off_diagonal(rng, cfg);
                     SampleOutcome out;
                     out.input = describe(p);
                     out.residual = std::abs(quadric_residual(map_H(p, cfg.eps_diag)));
                     return out;
                 }});

    s.push_back({"H-im-condition", "Im(z2(conj z1 + conj z3)) > 0 on H(D^2 - D); residual = max(0, -Im)", 1e-12,
                 Extreme::Min, "min Im-condition", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const BidiscPoint p = sample_off_diagonal(rng, cfg);
                     const double im = im_condition(map_H(p, cfg.eps_diag));
                     SampleOutcome out;
                     out.input = describe(p);
                     out.monitored = im;
                     out.residual = std::max(0.0, -im);
                     if (!(im > 0.0)) {
                         out.hard_failure = true;
                         out.detail = "Im-condition " + g17(im) + " <= 0";
                     }
                     return out;
                 }});

    s.push_back({"H-sigma-negation", "H o sigma = -H, i.e. H^-1 (-I3) H = sigma", 1e-12, Extreme::None, "",
                 std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const BidiscPoint p = sample_off_diagonal(rng, cfg);
                     SampleOutcome out;
                     out.input = describe(p);
                     out.residual = (map_H(p.z2, p.z1, cfg.eps_diag) + map_H(p, cfg.eps_diag)).norm();
                     return out;
                 }});

    s.push_back({"H-roundtrip", "H^-1(H(p)) = p on D^2 - D", 1e-9, Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const BidiscPoint p = sample_off_diagonal(rng, cfg);
                     const BidiscPoint q = map_H_inv(map_H(p, cfg.eps_diag));
                     SampleOutcome out;
                     out.input = describe(p);
                     out.residual = std::max(std::abs(q.z1 - p.z1), std::abs(q.z2 - p.z2));
                     return out;
                 }});

    s.push_back({"orbit-levels",
                 "|z1|^2+|z2|^2-|z3|^2 at H(p) equals 2/rho(p)^2 - 1 = sqrt((alpha+1)/2), alpha = 8/a^4 - 8/a^2 + 1",
                 1e-10, Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const BidiscPoint p = sample_off_diagonal(rng, cfg);
                     const double rho = pseudo_hyperbolic(p);
                     const double level = minkowski_form(map_H(p, cfg.eps_diag));
                     SampleOutcome out;
                     out.input = describe(p);
                     out.residual = std::max(std::abs(level - (2.0 / (rho * rho) - 1.0)),
                                             std::abs(level - eta_level(alpha_from_a(rho))));
                     return out;
                 }});

    s.push_back({"preimage-formula",
                 "H^-1(D(2)_{s,t}) = {sqrt(2/(t+1)) < rho < sqrt(2/(s+1))}, (s,t) in {(1,3),(2,5),(1,inf)}", 1e-12,
                 Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     constexpr double kMargin = 1e-8;
                     static const std::array<std::pair<double, double>, 3> windows{
                         {{1.0, 3.0}, {2.0, 5.0}, {1.0, kInfinity}}};
                     const BidiscPoint p = sample_off_diagonal(rng, cfg);
                     const double rho = pseudo_hyperbolic(p);
                     const C3Point h = map_H(p, cfg.eps_diag);
                     SampleOutcome out;
                     out.input = describe(p);
                     bool compared = false;
                     for (const auto& [lo, hi] : windows) {
                         const Membership m = contains(DomainSpec::quadric_st(lo, hi), h);
                         const double rho_lo = std::sqrt(2.0 / (hi + 1.0));
                         const double rho_hi = std::sqrt(2.0 / (lo + 1.0));
                         const double rho_margin = std::min(rho - rho_lo, rho_hi - rho);
                         if (std::abs(m.margin) < kMargin || std::abs(rho_margin) < kMargin)
                             continue;
                         compared = true;
                         if (m.inside != (rho_margin > 0.0)) {
                             out.hard_failure = true;
                             out.detail = "membership mismatch for (s,t)=(" + g17(lo) + "," + g17(hi) + ")";
                         }
                     }
                     out.skipped = !compared;
                     return out;
                 }});

    s.push_back({"conjugation-so21", "H^-1 R(1) H = G_D: M H(p) = H(Phi_phi(p)) with M in SO+(2,1)", 1e-7,
                 Extreme::Max, "max |det M - 1|", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const MobiusMap m = sample_mobius(rng, cfg.rmax);
                     const ConjugationFit fit = conjugate_fit(BidiscAutomorphism::diagonal(m), rng, cfg.rmax);
                     SampleOutcome out;
                     out.input = describe(m);
                     out.residual = std::max(fit.fit_residual, fit.membership_residual);
                     out.monitored = std::abs(fit.determinant - 1.0);
                     if (!(std::abs(fit.determinant - 1.0) < 1e-9) || !(fit.matrix(2, 2) > 0.0)) {
                         out.hard_failure = true;
                         out.detail = "det=" + g17(fit.determinant) + " M33=" + g17(fit.matrix(2, 2));
                     }
                     return out;
                 }});

    s.push_back({"swap-is-minus-identity", "H^-1 (-I3) H = sigma: the fitted matrix of sigma is -I3", 1e-9,
                 Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const ConjugationFit fit = conjugate_fit(BidiscAutomorphism::sigma(), rng, cfg.rmax);
                     SampleOutcome out;
                     out.input = "sigma";
                     out.residual = (fit.matrix + Mat3R::Identity()).cwiseAbs().maxCoeff();
                     if (!(fit.fit_residual < 1e-7)) {
                         out.hard_failure = true;
                         out.detail = "fit residual " + g17(fit.fit_residual);
                     }
                     return out;
                 }});

    s.push_back({"aut-preserves-subdomains",
                 "Phi and Phi o sigma preserve D^2_r (r=0.7) and D^2_{s,t} (s=0.3, t=0.8)", 1e-10, Extreme::None, "",
                 std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     constexpr double kMargin = 1e-6;
                     static const std::array<DomainSpec, 2> domains{DomainSpec::bidisc_r(0.7),
                                                                    DomainSpec::bidisc_st(0.3, 0.8)};
                     const BidiscAutomorphism phi{sample_mobius(rng, cfg.rmax), rng.uniform() < 0.5};
                     const BidiscPoint p = sample_bidisc(rng, cfg.rmax);
                     const BidiscPoint q = phi(p);
                     SampleOutcome out;
                     out.input = describe(phi.phi) + (phi.swap ? " o sigma" : "") + " p=" + describe(p);
                     out.residual = std::abs(pseudo_hyperbolic(q) - pseudo_hyperbolic(p));
                     bool compared = false;
                     for (const auto& d : domains) {
                         const Membership mp = contains(d, p);
                         if (std::abs(mp.margin) < kMargin)
                             continue;
                         compared = true;
                         if (contains(d, q).inside != mp.inside) {
                             out.hard_failure = true;
                             out.detail = "membership of " + d.name() + " not preserved";
                         }
                     }
                     out.skipped = !compared;
                     return out;
                 }});

    s.push_back({"su11-orbit-invariant", "t = |u|/sqrt(1-|v|^2) is constant on SU(1,1)-orbits of B2", 1e-10,
                 Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const Mat3C a = su11_sample(rng);
                     const BallPoint p = sample_ball(rng, cfg.rmax);
                     SampleOutcome out;
                     out.input = describe(p);
                     out.residual = std::abs(su11_orbit_invariant(ball_action(a, p)) - su11_orbit_invariant(p));
                     return out;
                 }});

    s.push_back({"su11-orbit-ellipsoid", "SU(1,1).(t,0) lies on |u|^2 + t^2|v|^2 = t^2", 1e-10, Extreme::None, "",
                 std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig&) {
                     const double t = rng.uniform(0.05, 0.95);
                     const Mat3C a = su11_sample(rng);
                     const BallPoint q = ball_action(a, {t, 0.0});
                     SampleOutcome out;
                     out.input = "t=" + g17(t) + " image=" + describe(q);
                     out.residual = orbit_residual(OrbitSpec::ball_ellipsoid(t), q);
                     return out;
                 }});

    s.push_back({"gt-sphere", "g_t(z,w) = (z/t, w) maps SU(1,1).(t,0) onto S^3; both sides strongly pseudoconvex",
                 1e-12, Extreme::Min, "min ellipsoid Levi value", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig&) {
                     const double t = rng.uniform(0.05, 0.95);
                     const Mat3C a = su11_sample(rng);
                     const BallPoint q = ball_action(a, {t, 0.0});
                     const auto [gu, gv] = scale_g_t(t, q);
                     SampleOutcome out;
                     out.input = "t=" + g17(t) + " point=" + describe(q);
                     out.residual = std::abs(std::norm(gu) + std::norm(gv) - 1.0);
                     const double ell = levi_restricted(DefiningFunction::ellipsoid(t), to_cvector({q.u, q.v}));
                     const double sph = levi_restricted(DefiningFunction::sphere(), to_cvector({gu, gv}));
                     out.monitored = ell;
                     if (classify_levi(ell) != LeviClass::StronglyPseudoconvex ||
                         classify_levi(sph) != LeviClass::StronglyPseudoconvex || std::abs(sph - 1.0) > 1e-6) {
                         out.hard_failure = true;
                         out.detail = "levi ellipsoid=" + g17(ell) + " sphere=" + g17(sph);
                     }
                     return out;
                 }});

    s.push_back({"o21-matrix-B", "B in O(2,1) and B.(0,0) = (z,w) for real (z,w) in B2", 1e-12, Extreme::None, "",
                 std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const Complex x = sample_disc(rng, cfg.rmax).value();
                     const double z = x.real(), w = x.imag();
                     const Mat3R b = o21_point_matrix(z, w);
                     const BallPoint img = ball_action(b, {0.0, 0.0});
                     SampleOutcome out;
                     out.input = "(" + g17(z) + ", " + g17(w) + ")";
                     out.residual = std::max({o21_residual(b), std::abs(img.u - z), std::abs(img.v - w)});
                     return out;
                 }});

    s.push_back({"o21-totally-real", "O(2,1).(0,0) is the real slice of B2, a totally real submanifold", 1e-12,
                 Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     constexpr double kEps = 1e-6;
                     const Complex x = sample_disc(rng, cfg.rmax).value();
                     const Mat3R b = o21_point_matrix(x.real(), x.imag());
                     const std::array<std::function<Mat3R(double)>, 3> curves{
                         [](double e) { return so21_rotation(e); }, [](double e) { return so21_boost(e); },
                         [](double e) { return boost13(e); }};
                     SampleOutcome out;
                     out.input = "(" + g17(x.real()) + ", " + g17(x.imag()) + ")";
                     const BallPoint origin{0.0, 0.0};
                     const BallPoint p = ball_action(b, origin);
                     Eigen::Matrix<double, 4, 3> real_tangents;
                     double imag = std::max(std::abs(p.u.imag()), std::abs(p.v.imag()));
                     for (int c = 0; c < 3; ++c) {
                         const BallPoint fwd = ball_action(Mat3R(curves[c](kEps) * b), origin);
                         const BallPoint bwd = ball_action(Mat3R(curves[c](-kEps) * b), origin);
                         const Complex du = (fwd.u - bwd.u) / (2.0 * kEps);
                         const Complex dv = (fwd.v - bwd.v) / (2.0 * kEps);
                         imag = std::max({imag, std::abs(du.imag()), std::abs(dv.imag())});
                         real_tangents.col(c) << du.real(), du.imag(), dv.real(), dv.imag();
                     }
                     out.residual = imag;
                     Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(real_tangents, Eigen::ComputeThinU);
                     std::vector<CVector> basis;
                     for (int c = 0; c < 3; ++c) {
                         if (svd.singularValues()[c] <= 1e-6 * svd.singularValues()[0])
                             continue;
                         const auto col = svd.matrixU().col(c);
                         basis.push_back(to_cvector({{col[0], col[1]}, {col[2], col[3]}}));
                     }
                     const TotallyRealResult tr = totally_real_check(basis);
                     if (basis.size() != 2 || !tr.totally_real) {
                         out.hard_failure = true;
                         out.detail = "orbit dimension " + std::to_string(basis.size()) +
                                      ", dim(T cap iT) = " + std::to_string(tr.intersection_dim);
                     }
                     return out;
                 }});

    s.push_back({"levi-Fa", "F_a strongly pseudoconvex for a in {0.2, 0.5, 0.8}; residual = |FD - closed form|",
                 1e-6, Extreme::Min, "min Levi value", std::nullopt,
                 [](std::size_t i, RngStream& rng, const SuiteConfig& cfg) {
                     static const std::array<double, 3> as{0.2, 0.5, 0.8};
                     const double a = as[i % 3];
                     const BidiscPoint p = sample_leaf(a, rng, cfg.rmax);
                     SampleOutcome out = levi_sample(DefiningFunction::fa(a), to_cvector({p.z1, p.z2}), 1e-3);
                     out.input = "a=" + g17(a) + " p=" + describe(p);
                     return out;
                 }});

    s.push_back({"levi-eta", "eta levels {1.5, 2.125, 4} strongly pseudoconvex within the quadric", 1e-6,
                 Extreme::Min, "min Levi value", std::nullopt,
                 [](std::size_t i, RngStream& rng, const SuiteConfig& cfg) {
                     static const std::array<double, 3> levels{1.5, 2.125, 4.0};
                     const double level = levels[i % 3];
                     const BidiscPoint p = sample_leaf(a_from_level(level), rng, cfg.rmax);
                     const C3Point h = map_H(p, cfg.eps_diag);
                     SampleOutcome out = levi_sample(DefiningFunction::eta_level(level), to_cvector(h), 1e-3);
                     out.input = "level=" + g17(level) + " p=" + describe(p);
                     return out;
                 }});

    s.push_back({"levi-flat-control", "|z1|^2 = c^2 (c = 0.5) is Levi-flat; residual = |Levi value|", 1e-4,
                 Extreme::Max, "max |Levi value|", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const DefiningFunction f = DefiningFunction::levi_flat_control(0.5);
                     const Complex z1 = std::polar(0.5, rng.uniform(0.0, 2.0 * std::numbers::pi));
                     const Complex z2 = sample_disc(rng, cfg.rmax).value();
                     const double v = levi_restricted(f, to_cvector({z1, z2}));
                     SampleOutcome out;
                     out.input = "(" + to_string(z1) + ", " + to_string(z2) + ")";
                     out.residual = std::abs(v);
                     out.monitored = std::abs(v);
                     return out;
                 }});

    s.push_back({"sym-equivariance", "sym(Phi(p)) = sym(Phi(sigma p)): Psi_Phi o sym = sym o Phi is well defined",
                 1e-15, Extreme::None, "", std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const BidiscAutomorphism phi = BidiscAutomorphism::diagonal(sample_mobius(rng, cfg.rmax));
                     const BidiscPoint p = sample_bidisc(rng, cfg.rmax);
                     const BidiscPoint a = phi(p), b = phi(p.swapped());
                     const auto sa = sym(a.z1, a.z2);
                     const auto sb = sym(b.z1, b.z2);
                     SampleOutcome out;
                     out.input = describe(phi.phi) + " p=" + describe(p);
                     out.residual = std::max(std::abs(sa.first - sb.first), std::abs(sa.second - sb.second));
                     if (out.residual != 0.0) {
                         out.hard_failure = true;
                         out.detail = "sym values differ";
                     }
                     return out;
                 }});

    s.push_back({"J-H-compat", "J(p) = (1 : H(p)) in CP^3 off the diagonal", 1e-12, Extreme::None, "",
                 std::nullopt,
                 [](std::size_t, RngStream& rng, const SuiteConfig& cfg) {
                     const BidiscPoint p = sample_off_diagonal(rng, cfg);
                     SampleOutcome out;
                     out.input = describe(p);
                     out.residual = projective_distance(map_J(p.z1, p.z2),
                                                        ProjectivePoint::from_affine(map_H(p, cfg.eps_diag)));
                     return out;
                 }});

    s.push_back({"alpha-roundtrip", "a(alpha(a)) = a on a grid of 100 values; sqrt((alpha+1)/2) = 2/a^2 - 1", 1e-12,
                 Extreme::None, "", 100,
                 [](std::size_t i, RngStream&, const SuiteConfig&) {
                     const double a = static_cast<double>(i + 1) / 101.0;
                     const double alpha = alpha_from_a(a);
                     const double level = level_from_a(a);
                     SampleOutcome out;
                     out.input = "a=" + g17(a);
                     out.residual = std::max(std::abs(a_from_alpha(alpha) - a),
                                             std::abs(eta_level(alpha) - level) / level);
                     return out;
                 }});

    return s;
}

const std::vector<Suite>& registry()
{
    static const std::vector<Suite> r = build_registry();
    return r;
}

const Suite& find_suite(const std::string& id)
{
    for (const auto& s : registry())
        if (s.id == id)
            return s;
    throw ConfigError("unknown suite id '" + id + "'");
}

SampleOutcome run_sample(const Suite& suite, std::size_t index, const SuiteConfig& cfg)
{
    RngStream rng(cfg.seed, fnv1a(suite.id) + index);
    try {
        return suite.sample(index, rng, cfg);
    } catch (const std::exception& e) {
        SampleOutcome out;
        out.hard_failure = true;
        out.residual = kInfinity;
        out.detail = std::string("exception: ") + e.what();
        return out;
    }
}

nlohmann::json finite_or_null(double x)
{
    if (std::isfinite(x))
        return x;
    return nullptr;
}

}  // namespace

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("BIDISC_LAB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0')
            return v;
    }
    return kDefaultSeed;
}

void SuiteConfig::validate() const
{
    if (samples < 1)
        throw ConfigError("samples must be at least 1");
    if (!(rmax > 0.0 && rmax < 1.0))
        throw ConfigError("rmax must lie in (0, 1)");
    if (!(eps_diag > 0.0 && eps_diag < 1.0))
        throw ConfigError("eps_diag must lie in (0, 1)");
    if (workers < 1)
        throw ConfigError("workers must be at least 1");
    for (const auto& [name, tol] : tolerances) {
        if (!is_suite(name))
            throw ConfigError("tolerance override for unknown suite '" + name + "'");
        if (!(tol > 0.0) || !std::isfinite(tol))
            throw ConfigError("tolerance override for '" + name + "' must be positive");
    }
    if (suites)
        for (const auto& id : *suites)
            if (!is_suite(id))
                throw ConfigError("unknown suite id '" + id + "'");
}

const std::vector<std::string>& suite_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& s : registry())
            v.push_back(s.id);
        return v;
    }();
    return ids;
}

bool is_suite(const std::string& id)
{
    const auto& ids = suite_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

double default_tolerance(const std::string& id) { return find_suite(id).tolerance; }

SuiteReport run_suite(const std::string& id, const SuiteConfig& cfg)
{
    cfg.validate();
    const Suite& suite = find_suite(id);
    const auto start = std::chrono::steady_clock::now();

    const std::size_t count = suite.fixed_count.value_or(cfg.samples);
    std::vector<SampleOutcome> outcomes(count);
    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            outcomes[i] = run_sample(suite, i, cfg);
    };
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), count);
    if (workers <= 1) {
        work(0, count);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (count + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work, std::min(count, w * chunk), std::min(count, (w + 1) * chunk));
        for (auto& t : pool)
            t.join();
    }

    SuiteReport rep;
    rep.id = suite.id;
    rep.anchor = suite.anchor;
    const auto over = cfg.tolerances.find(id);
    rep.tolerance = over != cfg.tolerances.end() ? over->second : suite.tolerance;

    std::optional<double> extreme;
    for (std::size_t i = 0; i < count; ++i) {
        const SampleOutcome& o = outcomes[i];
        if (o.skipped && !o.hard_failure)
            continue;
        ++rep.sample_count;
        if (o.monitored && suite.extreme != Extreme::None) {
            if (!extreme)
                extreme = *o.monitored;
            else
                extreme = suite.extreme == Extreme::Min ? std::min(*extreme, *o.monitored)
                                                        : std::max(*extreme, *o.monitored);
        }
        rep.max_residual = std::max(rep.max_residual, o.residual);
        const bool failed = o.hard_failure || !(o.residual < rep.tolerance);
        if (o.hard_failure)
            ++rep.hard_failures;
        if (failed && rep.failures.size() < kMaxRecordedFailures)
            rep.failures.push_back({i, o.input, o.detail.empty() ? "residual above tolerance" : o.detail, o.residual});
    }
    if (extreme)
        rep.extreme = std::make_pair(suite.monitored_name, *extreme);
    rep.pass = rep.hard_failures == 0 && rep.max_residual < rep.tolerance;
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

VerifyResult verify_all(const SuiteConfig& cfg)
{
    cfg.validate();
    VerifyResult result;
    const std::vector<std::string> ids = cfg.suites.value_or(suite_ids());
    if (ids.empty())
        result.warnings.push_back("empty suite list: nothing was verified");
    for (const auto& id : ids) {
        result.reports.push_back(run_suite(id, cfg));
        if (!result.reports.back().pass)
            result.exit_code = 1;
    }
    return result;
}

nlohmann::json to_json(const SuiteReport& r)
{
    nlohmann::json j;
    j["id"] = r.id;
    j["anchor"] = r.anchor;
    j["pass"] = r.pass;
    j["max_residual"] = finite_or_null(r.max_residual);
    j["tolerance"] = r.tolerance;
    j["sample_count"] = r.sample_count;
    j["hard_failures"] = r.hard_failures;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : r.failures)
        j["failures"].push_back(
            {{"index", f.index}, {"input", f.input}, {"detail", f.detail}, {"residual", finite_or_null(f.residual)}});
    if (r.extreme)
        j["extreme"] = {{"name", r.extreme->first}, {"value", finite_or_null(r.extreme->second)}};
    j["wall_time_s"] = r.wall_time_s;
    return j;
}

nlohmann::json to_json(const VerifyResult& result, const SuiteConfig& cfg)
{
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["config"] = {{"seed", cfg.seed},
                   {"samples", cfg.samples},
                   {"rmax", cfg.rmax},
                   {"eps_diag", cfg.eps_diag},
                   {"tolerances", cfg.tolerances}};
    j["all_pass"] = result.exit_code == 0;
    j["warnings"] = result.warnings;
    j["suites"] = nlohmann::json::array();
    for (const auto& r : result.reports)
        j["suites"].push_back(to_json(r));
    return j;
}

AnyPoint sample_orbit(const OrbitSpec& spec, RngStream& rng, double rmax)
{
    switch (spec.kind) {
    case OrbitKind::Fa:
        return sample_leaf(spec.param, rng, rmax);
    case OrbitKind::EtaLevel:
        return map_H(sample_leaf(a_from_level(spec.param), rng, rmax));
    case OrbitKind::BallEllipsoid:
        return ball_action(su11_sample(rng), BallPoint{spec.param, 0.0});
    case OrbitKind::BallComplexCurve:
        return ball_action(su11_sample(rng), BallPoint{0.0, 0.0});
    case OrbitKind::BallRealSlice: {
        const Complex x = sample_disc(rng, rmax).value();
        return ball_action(o21_point_matrix(x.real(), x.imag()), BallPoint{0.0, 0.0});
    }
    }
    throw DomainError("sample_orbit: unknown orbit");
}

void dump_orbit(const OrbitSpec& spec, std::size_t n, std::uint64_t seed, std::ostream& out)
{
    const bool c3 = spec.kind == OrbitKind::EtaLevel;
    out << (c3 ? "x1,y1,x2,y2,x3,y3,residual\n" : "x1,y1,x2,y2,residual\n");
    const std::uint64_t base = fnv1a("dump-orbit:" + spec.name());
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(seed, base + i);
        const AnyPoint p = sample_orbit(spec, rng);
        std::vector<Complex> coords;
        if (const auto* b = std::get_if<BidiscPoint>(&p))
            coords = {b->z1, b->z2};
        else if (const auto* q = std::get_if<BallPoint>(&p))
            coords = {q->u, q->v};
        else if (const auto* z = std::get_if<C3Point>(&p))
            coords = {(*z)[0], (*z)[1], (*z)[2]};
        for (Complex c : coords)
            out << g17(c.real()) << ',' << g17(c.imag()) << ',';
        out << g17(orbit_residual(spec, p)) << '\n';
    }
}

void dump_orbit(const OrbitSpec& spec, std::size_t n, std::uint64_t seed, const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    dump_orbit(spec, n, seed, f);
    f.flush();
    if (!f)
        throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace bidisc
