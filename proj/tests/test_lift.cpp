#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "torusrot/errors.hpp"
#include "torusrot/lift.hpp"
#include "torusrot/rng.hpp"

using namespace torusrot;

TEST_CASE("flagship family evaluates the two-shear composition") {
    const LiftMap f = LiftMap::mz(0.5, 0.5);

    // sin(pi/2) = 1 exactly, so both images land on exact dyadics.
    const Vec2 a = f({0.25, 0.0});
    CHECK(a.x == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(a.y == doctest::Approx(0.5).epsilon(1e-15));

    const Vec2 b = f({0.25, 0.25});
    CHECK(b.x == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(b.y == doctest::Approx(0.75).epsilon(1e-15));

    // Generic point against the formula written out by hand.
    const double alpha = 0.3, beta = 0.7, x = 0.123, y = 0.456;
    const LiftMap g = LiftMap::mz(alpha, beta);
    const double two_pi = 2.0 * std::numbers::pi;
    const double ynew = y + alpha * std::sin(two_pi * x);
    const double xnew = x + beta * std::sin(two_pi * ynew);
    const Vec2 c = g({x, y});
    CHECK(c.x == doctest::Approx(xnew).epsilon(1e-15));
    CHECK(c.y == doctest::Approx(ynew).epsilon(1e-15));
}

TEST_CASE("translation lift adds its vector") {
    // Dyadic data keeps the additions exact.
    const LiftMap f = LiftMap::translation({0.25, -0.75});
    CHECK(f({0.125, 0.5}) == Vec2{0.375, -0.25});
    REQUIRE(f.has_inverse());
    CHECK(f.inverse({0.375, -0.25}) == Vec2{0.125, 0.5});
}

TEST_CASE("closed-form inverse round-trips") {
    const LiftMap f = LiftMap::mz(0.5, 0.502);
    REQUIRE(f.has_inverse());
    CounterRng rng(0x4C494654ull);
    for (int i = 0; i < 200; ++i) {
        const Vec2 z = rng.in_square({-2.0, -2.0}, {3.0, 3.0});
        const Vec2 back = f.inverse(f(z));
        CHECK(std::fabs(back.x - z.x) <= 1e-12);
        CHECK(std::fabs(back.y - z.y) <= 1e-12);
        const Vec2 forth = f(f.inverse(z));
        CHECK(std::fabs(forth.x - z.x) <= 1e-12);
        CHECK(std::fabs(forth.y - z.y) <= 1e-12);
    }
}

TEST_CASE("commutation with integer translations") {
    CHECK(translate_commutation_check(LiftMap::mz(0.5, 0.5)) <= 1e-12);
    CHECK(translate_commutation_check(LiftMap::mz(0.9, 0.1)) <= 1e-12);
    CHECK(translate_commutation_check(LiftMap::translation({0.25, 0.75})) <= 1e-12);

    // x -> 2x is not a lift of anything homotopic to the identity.
    const LiftMap bad = LiftMap::custom(
        "doubling", [](const Vec2& z) { return Vec2{2.0 * z.x, z.y}; }, {});
    CHECK(translate_commutation_check(bad) > 0.5);
}

TEST_CASE("numerical area preservation") {
    const LiftMap f = LiftMap::mz(0.4, 0.8);
    const double h = 1e-6;
    CounterRng rng(0x41524541ull);
    for (int i = 0; i < 50; ++i) {
        const Vec2 z = rng.in_square({0.0, 0.0}, {1.0, 1.0});
        const Vec2 fx = (f({z.x + h, z.y}) - f({z.x - h, z.y})) / (2.0 * h);
        const Vec2 fy = (f({z.x, z.y + h}) - f({z.x, z.y - h})) / (2.0 * h);
        const double det = fx.x * fy.y - fx.y * fy.x;
        CHECK(det == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("custom lifts carry their description and optional inverse") {
    const LiftMap f = LiftMap::custom(
        "shear", [](const Vec2& z) { return Vec2{z.x + 0.25, z.y}; },
        [](const Vec2& z) { return Vec2{z.x - 0.25, z.y}; });
    CHECK(f.description() == "shear");
    REQUIRE(f.has_inverse());
    CHECK(f.inverse(f({0.5, 0.5})) == Vec2{0.5, 0.5});

    const LiftMap g = LiftMap::custom(
        "one-way", [](const Vec2& z) { return Vec2{z.x + 0.25, z.y}; }, {});
    CHECK_FALSE(g.has_inverse());
    CHECK_THROWS_AS(g.inverse({0.0, 0.0}), ConfigError);
}

TEST_CASE("conjugated lift evaluates Minv F M") {
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    const double m[4] = {1.0, 1.0, 0.0, 1.0};
    const double minv[4] = {1.0, -1.0, 0.0, 1.0};
    const LiftMap g = LiftMap::conjugated(f, m, minv, "conjugated mz");
    CounterRng rng(0x434F4E4Aull);
    for (int i = 0; i < 100; ++i) {
        const Vec2 z = rng.in_square({-1.0, -1.0}, {2.0, 2.0});
        const Vec2 mz{z.x + z.y, z.y};
        const Vec2 fmz = f(mz);
        const Vec2 want{fmz.x - fmz.y, fmz.y};
        const Vec2 got = g(z);
        CHECK(std::fabs(got.x - want.x) <= 1e-13);
        CHECK(std::fabs(got.y - want.y) <= 1e-13);
    }
    REQUIRE(g.has_inverse());
    const Vec2 z{0.37, 0.81};
    const Vec2 back = g.inverse(g(z));
    CHECK(std::fabs(back.x - z.x) <= 1e-12);
    CHECK(std::fabs(back.y - z.y) <= 1e-12);
    // Still a lift.
    CHECK(translate_commutation_check(g) <= 1e-11);
}

TEST_CASE("default map is the zero translation") {
    const LiftMap f;
    CHECK(f({0.6, 0.7}) == Vec2{0.6, 0.7});
    CHECK(f.description() == "translation(0,0)");
}

TEST_CASE("descriptions name the family parameters") {
    const LiftMap f = LiftMap::mz(0.5, 0.25);
    CHECK(f.description().find("0.5") != std::string::npos);
    CHECK(f.description().find("0.25") != std::string::npos);
}
