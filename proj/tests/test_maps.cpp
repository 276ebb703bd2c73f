#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bidisc/domains.hpp"
#include "bidisc/maps.hpp"
#include "oracles.hpp"

using namespace bidisc;

namespace {

const Complex I(0.0, 1.0);

double c3_dist(const C3Point& a, const C3Point& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("map_J examples")
{
    CHECK(projective_equal(map_J(0.0, 0.0), ProjectivePoint(0.0, 1.0, I, 0.0)));
    CHECK(std::abs(map_J(0.4, 0.4)[0]) == 0.0);
    CHECK(projective_equal(map_J(0.5, -0.5), ProjectivePoint(1.0, 1.25, 0.75 * I, 0.0)));
}

TEST_CASE("map_H examples")
{
    CHECK(c3_dist(map_H(0.5, -0.5), C3Point(1.25, 0.75 * I, 0.0)) < 1e-15);
    CHECK(c3_dist(map_H(-0.5, 0.5), C3Point(-1.25, -0.75 * I, 0.0)) < 1e-15);
    CHECK_THROWS_AS(map_H(0.3, 0.3), DomainError);
    CHECK_THROWS_AS(map_H(0.3, 0.3 + 1e-7), DomainError);
    CHECK_NOTHROW(map_H(0.3, 0.3 + 1e-5));
    CHECK_THROWS_AS(map_H(1.0, 0.0), DomainError);
}

TEST_CASE("map_H matches substitution and satisfies its identities")
{
    RngStream rng(2, 2);
    for (int i = 0; i < 2000; ++i) {
        const BidiscPoint p = sample_bidisc(rng);
        if (std::abs(p.z1 - p.z2) < 1e-3) continue;
        oracle::C h[3];
        oracle::map_H(p.z1, p.z2, h);
        const C3Point got = map_H(p);
        const double scale = 1.0 + got.cwiseAbs().maxCoeff();
        CHECK(c3_dist(got, C3Point(h[0], h[1], h[2])) < 1e-14 * scale);
        CHECK(c3_dist(map_H(p.swapped()), -got) < 1e-14 * scale);
        CHECK(std::abs(quadric_residual(got)) < 1e-10 * scale * scale);

        const ProjectivePoint j = map_J(p.z1, p.z2);
        CHECK(projective_equal(j, ProjectivePoint::from_affine(got)));
    }
}

TEST_CASE("report_H spot value")
{
    const MapReport r = report_H(0.5, -0.5);
    CHECK(r.level == doctest::Approx(2.125).epsilon(1e-15));
    CHECK(r.im_condition == doctest::Approx(0.9375).epsilon(1e-15));
    CHECK(r.quadric < 1e-15);
}

TEST_CASE("map_H_inv examples")
{
    const BidiscPoint p = map_H_inv(C3Point(1.25, 0.75 * I, 0.0));
    CHECK(std::abs(p.z1 - 0.5) < 1e-15);
    CHECK(std::abs(p.z2 + 0.5) < 1e-15);
    CHECK_THROWS_AS(map_H_inv(C3Point(1.0, 0.0, 0.0)), DomainError);
    CHECK_THROWS_AS(map_H_inv(C3Point(1.0, 1.0, 0.0)), DomainError);
}

TEST_CASE("map_H_inv round trip and swap")
{
    RngStream rng(19, 0);
    for (int i = 0; i < 2000; ++i) {
        const BidiscPoint p = sample_bidisc(rng);
        if (std::abs(p.z1 - p.z2) < 1e-3) continue;
        const C3Point h = map_H(p);
        const BidiscPoint back = map_H_inv(h);
        CHECK(std::abs(back.z1 - p.z1) + std::abs(back.z2 - p.z2) < 1e-9);
        const BidiscPoint sw = map_H_inv(C3Point(-h));
        CHECK(std::abs(sw.z1 - p.z2) + std::abs(sw.z2 - p.z1) < 1e-9);
    }
}

TEST_CASE("sym and scale_g_t examples")
{
    const auto [s0, p0] = sym(0.0, 0.0);
    CHECK(std::abs(s0) == 0.0);
    CHECK(std::abs(p0) == 0.0);
    const auto [s, p] = sym(0.5, -0.5);
    CHECK(std::abs(s) == 0.0);
    CHECK(std::abs(p + 0.25) == 0.0);

    const auto [a, b] = scale_g_t(0.4, BallPoint::make(0.4, 0.0));
    CHECK(std::abs(a - 1.0) < 1e-15);
    CHECK(std::abs(b) == 0.0);
    const auto [c, d] = scale_g_t(0.5, BallPoint::make(0.3, 0.8));
    CHECK(std::abs(c - 0.6) < 1e-15);
    CHECK(std::abs(d - 0.8) < 1e-15);
    CHECK(std::abs(std::norm(c) + std::norm(d) - 1.0) < 1e-12);
    const auto [e, f] = scale_g_t(0.5, BallPoint::make(0.0, 0.0));
    CHECK(std::abs(e) + std::abs(f) == 0.0);
    CHECK_THROWS_AS(scale_g_t(0.0, BallPoint::make(0.0, 0.0)), DomainError);
}

TEST_CASE("sym is swap invariant")
{
    RngStream rng(1, 1);
    for (int i = 0; i < 500; ++i) {
        const BidiscPoint q = sample_bidisc(rng);
        CHECK(sym(q.z1, q.z2) == sym(q.z2, q.z1));
    }
}

TEST_CASE("BidiscAutomorphism acts diagonally and by swap")
{
    const MobiusMap m(0.4, {0.1, -0.3});
    const BidiscPoint p = BidiscPoint::make({0.2, 0.1}, {-0.5, 0.3});
    const BidiscPoint q = BidiscAutomorphism::diagonal(m)(p);
    CHECK(std::abs(q.z1 - oracle::mobius(0.4, {0.1, -0.3}, p.z1)) < 1e-14);
    CHECK(std::abs(q.z2 - oracle::mobius(0.4, {0.1, -0.3}, p.z2)) < 1e-14);
    const BidiscPoint s = BidiscAutomorphism::sigma()(p);
    CHECK(s.z1 == p.z2);
    CHECK(s.z2 == p.z1);
}

TEST_CASE("conjugate_fit examples")
{
    RngStream rng(42, 100);
    const ConjugationFit id = conjugate_fit(BidiscAutomorphism::diagonal(MobiusMap::identity()), rng);
    CHECK((id.matrix - Mat3R::Identity()).norm() < 1e-9);

    const ConjugationFit neg = conjugate_fit(BidiscAutomorphism::diagonal(MobiusMap(std::numbers::pi, 0.0)), rng);
    CHECK((neg.matrix - Mat3R(Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal())).norm() < 1e-9);

    const ConjugationFit sw = conjugate_fit(BidiscAutomorphism::sigma(), rng);
    CHECK((sw.matrix + Mat3R::Identity()).norm() < 1e-9);
    CHECK(sw.determinant == doctest::Approx(-1.0));
}

TEST_CASE("conjugate_fit recovers rotations and lands in SO+(2,1)")
{
    RngStream rng(5, 50);
    for (int i = 0; i < 30; ++i) {
        const double th = rng.uniform(-3.0, 3.0);
        const ConjugationFit f = conjugate_fit(BidiscAutomorphism::diagonal(MobiusMap(th, 0.0)), rng);
        CHECK((f.matrix - so21_rotation(th)).norm() < 1e-9);

        const MobiusMap m = sample_mobius(rng);
        const ConjugationFit g = conjugate_fit(BidiscAutomorphism::diagonal(m), rng);
        CHECK(g.membership_residual < 1e-7);
        CHECK(std::abs(g.determinant - 1.0) < 1e-9);
        CHECK(g.matrix(2, 2) > 0.0);
        CHECK(g.fit_residual < 1e-7);
        CHECK(g.condition < kFitConditionLimit);
    }
}
