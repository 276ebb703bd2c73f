#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bidisc/groups.hpp"
#include "bidisc/maps.hpp"
#include "oracles.hpp"

using namespace bidisc;

TEST_CASE("su21_residual examples")
{
    const Su21Residual id = su21_residual(Mat3C::Identity());
    CHECK(id.form == 0.0);
    CHECK(id.det == 0.0);
    CHECK(id.ok());

    // 2I: A* I21 A - I21 = 3 I21 so the Frobenius norm is 3 sqrt(3); det - 1 = 7
    const Su21Residual two = su21_residual(2.0 * Mat3C::Identity());
    CHECK(two.form == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(two.det == doctest::Approx(7.0).epsilon(1e-14));
    CHECK_FALSE(two.ok());

    Mat3C bad = Mat3C::Identity();
    bad(0, 0) = Complex(std::nan(""), 0.0);
    CHECK_FALSE(su21_residual(bad).ok());
}

TEST_CASE("su11_embed examples")
{
    const Mat3C e = su11_embed(1.0, 0.0);
    CHECK((e - Mat3C::Identity()).norm() == 0.0);
    CHECK(su21_residual(su11_embed(std::sqrt(2.0), 1.0)).ok(kConstructedTol));
    CHECK_THROWS_AS(su11_embed(1.0, 1.0), DomainError);
}

TEST_CASE("ball_action examples")
{
    const BallPoint p = BallPoint::make({0.2, 0.1}, {-0.3, 0.4});
    const BallPoint q = ball_action(Mat3C(Mat3C::Identity()), p);
    CHECK(std::abs(q.u - p.u) == 0.0);
    CHECK(std::abs(q.v - p.v) == 0.0);

    // alpha = sqrt 2, beta = 1 sends (0.3, 0) to (0.3 / sqrt 2, 1 / sqrt 2)
    const BallPoint r = ball_action(su11_embed(std::sqrt(2.0), 1.0), BallPoint::make(0.3, 0.0));
    CHECK(std::abs(r.u - 0.3 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(r.v - 1.0 / std::sqrt(2.0)) < 1e-15);

    CHECK_THROWS_AS(ball_action(Mat3C(2.0 * Mat3C::Identity()), p), DomainError);
}

TEST_CASE("ball_action is a group action and preserves the ball")
{
    RngStream rng(21, 4);
    for (int i = 0; i < 500; ++i) {
        const Mat3C a = su11_sample(rng), b = su11_sample(rng);
        const BallPoint p = sample_ball(rng);
        const BallPoint ab = ball_action(Mat3C(a * b), p);
        const BallPoint seq = ball_action(a, ball_action(b, p));
        CHECK(std::abs(ab.u - seq.u) + std::abs(ab.v - seq.v) < 1e-9);
        CHECK(ab.norm2() < 1.0);
        CHECK(su21_residual(a).ok());
    }
}

TEST_CASE("su11_orbit_invariant examples and invariance")
{
    CHECK(su11_orbit_invariant(BallPoint::make(0.3, 0.4)) == doctest::Approx(0.3 / std::sqrt(0.84)).epsilon(1e-15));
    CHECK(su11_orbit_invariant(BallPoint::make(0.0, 0.5)) == 0.0);

    RngStream rng(8, 8);
    for (int i = 0; i < 1000; ++i) {
        const BallPoint p = sample_ball(rng);
        const double t = su11_orbit_invariant(p);
        const BallPoint q = ball_action(su11_sample(rng), p);
        CHECK(std::abs(su11_orbit_invariant(q) - t) < 1e-10);
        // the image lies on |u|^2 + t^2 |v|^2 = t^2
        CHECK(std::abs(std::norm(q.u) + t * t * std::norm(q.v) - t * t) < 1e-10);
    }
}

TEST_CASE("SO+(2,1) generators and sampling")
{
    const Mat3R r = so21_rotation(std::numbers::pi / 2);
    CHECK(o21_residual(r) < 1e-15);
    CHECK(is_so21_plus(r));
    CHECK(std::abs(r(0, 1) + 1.0) < 1e-15);

    const Mat3R b = so21_boost(0.7);
    CHECK(o21_residual(b) < 1e-14);
    CHECK(is_so21_plus(b));
    CHECK(b(2, 2) == doctest::Approx(std::cosh(0.7)));
    CHECK(b(1, 2) == doctest::Approx(std::sinh(0.7)));

    Mat3R flip = Mat3R::Identity();
    flip(2, 2) = -1.0;
    CHECK(o21_residual(flip) < 1e-15);
    CHECK_FALSE(is_so21_plus(flip));

    RngStream rng(4, 2);
    for (int i = 0; i < 1000; ++i) {
        const Mat3R m = so21_sample(rng);
        CHECK(o21_residual(m) < 1e-9);
        CHECK(is_so21_plus(m));
    }
}

TEST_CASE("c3_action and cp3_action preserve the quadric form")
{
    RngStream rng(10, 3);
    for (int i = 0; i < 200; ++i) {
        const Mat3R m = so21_sample(rng, 1.5);
        C3Point z(Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                  Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
        const C3Point w = c3_action(m, z);
        const auto q = [](const C3Point& x) { return x[0] * x[0] + x[1] * x[1] - x[2] * x[2]; };
        const auto f = [](const C3Point& x) { return std::norm(x[0]) + std::norm(x[1]) - std::norm(x[2]); };
        CHECK(std::abs(q(w) - q(z)) < 1e-9 * (1.0 + w.squaredNorm()));
        CHECK(std::abs(f(w) - f(z)) < 1e-9 * (1.0 + w.squaredNorm()));

        const ProjectivePoint p = ProjectivePoint::from_affine(z);
        CHECK(projective_equal(cp3_action(m, p), ProjectivePoint::from_affine(w), 1e-12));
    }
}

TEST_CASE("o21_point_matrix examples")
{
    // at (0.6, 0): k = 1/sqrt(1 - 0.36) = 1.25, gamma = 0.75, alpha = 1
    const Mat3R b = o21_point_matrix(0.6, 0.0);
    Mat3R expect;
    expect << 0.0, 1.25, 0.75, 1.0, 0.0, 0.0, 0.0, 0.75, 1.25;
    CHECK((b - expect).norm() < 1e-15);
    CHECK(b.determinant() == doctest::Approx(-1.0));
    CHECK(o21_residual(b) < 1e-12);

    CHECK_THROWS_AS(o21_point_matrix(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(o21_point_matrix(0.8, 0.6), DomainError);
    CHECK_THROWS_AS(o21_point_matrix(BallPoint::make({0.1, 0.1}, 0.2)), DomainError);
}

TEST_CASE("o21_point_matrix is in O(2,1) and sends the origin to its point")
{
    RngStream rng(77, 0);
    for (int i = 0; i < 1000; ++i) {
        double z, w;
        do {
            z = rng.uniform(-0.95, 0.95);
            w = rng.uniform(-0.95, 0.95);
        } while (z * z + w * w >= 0.9025 || z * z + w * w < 1e-6);
        const Mat3R b = o21_point_matrix(z, w);
        CHECK(o21_residual(b) < 1e-12 * std::max(1.0, b.squaredNorm()));
        const BallPoint img = ball_action(b, BallPoint::make(0.0, 0.0));
        CHECK(std::abs(img.u - z) + std::abs(img.v - w) < 1e-12);
    }
}

TEST_CASE("conjugation by H sends rotations to SO(2) rotations")
{
    // H(e^{i th} z, e^{i th} w) = R(th) H(z, w) with R the planar rotation in (h1, h2)
    RngStream rng(12, 12);
    for (int i = 0; i < 100; ++i) {
        const double th = rng.uniform(-3.0, 3.0);
        const Complex e(std::cos(th), std::sin(th));
        const BidiscPoint p = sample_bidisc(rng, 0.9);
        if (std::abs(p.z1 - p.z2) < 0.05) continue;
        oracle::C h[3], hr[3];
        oracle::map_H(p.z1, p.z2, h);
        oracle::map_H(e * p.z1, e * p.z2, hr);
        const C3Point m = c3_action(so21_rotation(th), C3Point(h[0], h[1], h[2]));
        CHECK(std::abs(m[0] - hr[0]) + std::abs(m[1] - hr[1]) + std::abs(m[2] - hr[2]) <
              1e-12 * (1.0 + std::abs(h[0]) + std::abs(h[1])));
    }
}
