#include "doctest.h"

#include <cmath>
#include <vector>

#include "bidisc/domains.hpp"
#include "bidisc/levi.hpp"
#include "bidisc/maps.hpp"
#include "oracles.hpp"

using namespace bidisc;

namespace {

const Complex I(0.0, 1.0);

CVector vec(Complex a, Complex b)
{
    CVector v(2);
    v << a, b;
    return v;
}

CVector vec(const C3Point& p) { return CVector(p); }

}  // namespace

TEST_CASE("wirtinger_gradient examples")
{
    const CVector g = wirtinger_gradient(DefiningFunction::sphere(), vec(0.6, 0.8));
    CHECK((g - vec(0.6, 0.8)).norm() < 1e-9);

    const CVector h = wirtinger_gradient(DefiningFunction::levi_flat_control(0.5), vec(0.5, 0.3 * I));
    CHECK((h - vec(0.5, 0.0)).norm() < 1e-9);

    // conj of the point for the sphere: d|u|^2/du = conj(u)
    const CVector k = wirtinger_gradient(DefiningFunction::sphere(), vec(Complex(0.3, 0.4), Complex(-0.2, 0.1)));
    CHECK((k - vec(Complex(0.3, -0.4), Complex(-0.2, -0.1))).norm() < 1e-9);
}

TEST_CASE("complex_hessian examples")
{
    const CMatrix s = complex_hessian(DefiningFunction::sphere(), vec(Complex(0.2, 0.1), 0.7));
    CHECK((s - CMatrix::Identity(2, 2)).norm() < 1e-6);

    const CMatrix e = complex_hessian(DefiningFunction::ellipsoid(0.5), vec(0.3, Complex(0.0, 0.4)));
    CMatrix de = CMatrix::Zero(2, 2);
    de(0, 0) = 1.0;
    de(1, 1) = 0.25;
    CHECK((e - de).norm() < 1e-6);

    const CMatrix c = complex_hessian(DefiningFunction::levi_flat_control(0.5), vec(0.5, 0.3));
    CMatrix dc = CMatrix::Zero(2, 2);
    dc(0, 0) = 1.0;
    CHECK((c - dc).norm() < 1e-6);

    const HessianResult r = complex_hessian_fd(DefiningFunction::fa(0.5), vec(0.3, -0.2));
    CHECK(r.hermitian_defect < 1e-6);
}

TEST_CASE("Fa gradient and Hessian match hand-derived closed forms")
{
    // r = |z1 - z2|^2 - a^2 |1 - conj(z1) z2|^2
    const double a = 0.8;
    const DefiningFunction f = DefiningFunction::fa(a);
    RngStream rng(6, 6);
    for (int i = 0; i < 200; ++i) {
        const BidiscPoint p = sample_bidisc(rng, 0.9);
        const Complex z1 = p.z1, z2 = p.z2;
        const Complex d = z1 - z2, e = 1.0 - std::conj(z1) * z2;
        const Complex g1 = std::conj(d) + a * a * std::conj(z2) * e;
        const Complex g2 = -std::conj(d) + a * a * std::conj(z1) * std::conj(e);
        const CVector g = wirtinger_gradient(f, vec(z1, z2));
        CHECK(std::abs(g[0] - g1) + std::abs(g[1] - g2) < 1e-8);

        const CMatrix h = complex_hessian(f, vec(z1, z2));
        const Complex h11 = 1.0 - a * a * std::norm(z2);
        const Complex h22 = 1.0 - a * a * std::norm(z1);
        const Complex h12 = -1.0 + a * a * (1.0 - z1 * std::conj(z2));
        CHECK(std::abs(h(0, 0) - h11) < 1e-6);
        CHECK(std::abs(h(1, 1) - h22) < 1e-6);
        CHECK(std::abs(h(0, 1) - h12) < 1e-6);
        CHECK(std::abs(h(1, 0) - std::conj(h12)) < 1e-6);
    }
}

TEST_CASE("complex_tangent examples")
{
    const CVector t = complex_tangent(DefiningFunction::sphere(), vec(0.6, 0.8));
    CHECK((t - vec(0.8, -0.6)).norm() < 1e-8);

    const CVector c = complex_tangent(DefiningFunction::levi_flat_control(0.5), vec(0.5, 0.0));
    CHECK((c - vec(0.0, 1.0)).norm() < 1e-8);

    CHECK_THROWS_AS(complex_tangent(DefiningFunction::sphere(), vec(0.0, 0.0)), DomainError);
    CHECK_THROWS_AS(complex_tangent(DefiningFunction::fa(0.5), vec(0.99999999, 0.0)), DomainError);
    CHECK_THROWS_AS(complex_tangent(DefiningFunction::sphere(), CVector::Zero(3)), DomainError);
}

TEST_CASE("levi_restricted examples")
{
    CHECK(std::abs(levi_restricted(DefiningFunction::sphere(), vec(0.6, 0.8)) - 1.0) < 1e-6);
    CHECK(std::abs(levi_restricted(DefiningFunction::levi_flat_control(0.5), vec(0.5, 0.3))) < 1e-4);

    // hand-derived gradient (0.8, -0.288) and Hessian [[1, -0.36], [-0.36, 0.5904]]
    const double expect = oracle::levi_2d(0.8, -0.288, 1.0, -0.36, 0.5904);
    CHECK(expect == doctest::Approx(0.294912 / 0.722944).epsilon(1e-12));
    const double got = levi_restricted(DefiningFunction::fa(0.8), vec(0.8, 0.0));
    CHECK(got > 1e-3);
    CHECK(std::abs(got - expect) < 1e-6);

    CHECK_THROWS_AS(levi_restricted(DefiningFunction::sphere(), vec(0.5, 0.5)), DomainError);
}

TEST_CASE("classification and report")
{
    CHECK(classify_levi(0.5) == LeviClass::StronglyPseudoconvex);
    CHECK(classify_levi(5e-5) == LeviClass::LeviFlat);
    CHECK(classify_levi(-5e-5) == LeviClass::LeviFlat);
    CHECK(classify_levi(-0.5) == LeviClass::Indefinite);
    CHECK(to_string(LeviClass::LeviFlat) == "levi-flat");

    const LeviReport r = levi_report(DefiningFunction::sphere(), vec(0.6, 0.8));
    CHECK(r.classification == LeviClass::StronglyPseudoconvex);
    CHECK(r.tangent_residual < 1e-9);
    CHECK(levi_report(DefiningFunction::levi_flat_control(0.5), vec(0.5, 0.3)).classification ==
          LeviClass::LeviFlat);
}

TEST_CASE("Fa leaves are strongly pseudoconvex along G_D orbits")
{
    RngStream rng(90, 1);
    for (double a : {0.2, 0.5, 0.8}) {
        const DefiningFunction f = DefiningFunction::fa(a);
        for (int i = 0; i < 50; ++i) {
            const MobiusMap m = sample_mobius(rng, 0.6);
            const BidiscPoint p = BidiscAutomorphism::diagonal(m)(BidiscPoint::make(a, 0.0));
            if (std::abs(p.z1) > 0.95 || std::abs(p.z2) > 0.95) continue;
            const LeviReport r = levi_report(f, vec(p.z1, p.z2));
            CHECK(r.classification == LeviClass::StronglyPseudoconvex);
            const double oracle_value = oracle::levi_2d(
                r.gradient[0], r.gradient[1], f.closed_form_hessian(r.point)(0, 0),
                f.closed_form_hessian(r.point)(0, 1), f.closed_form_hessian(r.point)(1, 1));
            CHECK(std::abs(r.levi_value - oracle_value) < 1e-6);
        }
    }
}

TEST_CASE("eta levels are strongly pseudoconvex on H images")
{
    RngStream rng(91, 1);
    for (double a : {0.3, 0.8}) {
        const DefiningFunction f = DefiningFunction::eta_level(level_from_a(a));
        CHECK(f.dimension() == 3);
        for (int i = 0; i < 30; ++i) {
            const MobiusMap m = sample_mobius(rng, 0.6);
            const BidiscPoint p = BidiscAutomorphism::diagonal(m)(BidiscPoint::make(a, 0.0));
            const CVector z = vec(map_H(p));
            const LeviReport r = levi_report(f, z);
            CHECK(r.levi_value > 1e-3);
            // tangent to the quadric as well as to the level set
            CHECK(std::abs(2.0 * z[0] * r.tangent[0] + 2.0 * z[1] * r.tangent[1] - 2.0 * z[2] * r.tangent[2]) <
                  1e-8 * (1.0 + z.norm()));
            CHECK(std::abs(r.tangent.norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("totally_real_check examples")
{
    const std::vector<CVector> real_slice{vec(1.0, 0.0), vec(0.0, 1.0)};
    const TotallyRealResult a = totally_real_check(real_slice);
    CHECK(a.totally_real);
    CHECK(a.intersection_dim == 0);

    const std::vector<CVector> curve{vec(0.0, 1.0), vec(0.0, I)};
    const TotallyRealResult b = totally_real_check(curve);
    CHECK_FALSE(b.totally_real);
    CHECK(b.intersection_dim == 2);

    const std::vector<CVector> mixed{vec(1.0, 0.0), vec(I, 0.0)};
    CHECK(totally_real_check(mixed).intersection_dim == 2);

    const std::vector<CVector> three{vec(1.0, 0.0), vec(0.0, 1.0), vec(I, 0.0)};
    CHECK(totally_real_check(three).intersection_dim == 2);

    CHECK_THROWS_AS(totally_real_check(std::vector<CVector>{}), DomainError);
    CHECK_THROWS_AS(totally_real_check(std::vector<CVector>{vec(1.0, 0.0), vec(2.0, 0.0)}), DomainError);
}

TEST_CASE("bad surface parameters are rejected")
{
    CHECK_THROWS_AS(DefiningFunction::fa(0.0), DomainError);
    CHECK_THROWS_AS(DefiningFunction::fa(1.0), DomainError);
    CHECK_THROWS_AS(DefiningFunction::eta_level(1.0), DomainError);
    CHECK_THROWS_AS(DefiningFunction::ellipsoid(1.5), DomainError);
    CHECK_THROWS_AS(DefiningFunction::levi_flat_control(0.0), DomainError);
}
