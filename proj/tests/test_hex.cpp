#include <cmath>
#include <random>

#include "doctest.h"
#include "hexspline/hex.hpp"
#include "hexspline/verify.hpp"

using namespace hexspline;

TEST_CASE("lowest-order coefficient table") {
    const CoeffTable t = hex_coeffs_integer({1, 1, 1});
    CHECK(t.at(-1, -1) == 1);
    CHECK(t.at(-1, 0) == -1);
    CHECK(t.at(0, -1) == -1);
    CHECK(t.at(0, 0) == 0);
    CHECK(t.at(1, 0) == 1);
    CHECK(t.at(0, 1) == 1);
    CHECK(t.at(1, 1) == -1);
    CHECK(t.at(1, -1) == 0);
    CHECK(t.at(5, 5) == 0);
    CHECK(t.entries().size() == 6);
    CHECK(t.shift_convention == "Mk");
    CHECK(t.tail_bound == 0);
}

TEST_CASE("integer coefficients sum to zero and match the hexagonal closed form") {
    for (int n1 = 1; n1 <= 3; ++n1)
        for (int n2 = 1; n2 <= 3; ++n2)
            for (int n3 = 1; n3 <= 3; ++n3) CHECK(hex_coeffs_integer({n1, n2, n3}).sum() == 0.0);
    for (int n = 1; n <= 3; ++n) {
        const CoeffTable t = hex_coeffs_integer({n, n, n});
        for (int k1 = -n - 1; k1 <= n + 1; ++k1)
            for (int k2 = -n - 1; k2 <= n + 1; ++k2) CHECK(t.at(k1, k2) == condat_coeff(n, k1, k2));
    }
}

TEST_CASE("fractional table at integer orders is the shifted integer table") {
    const CoeffTable fr = hex_coeffs_fractional(Order::real({2, 1, 3}), {}, 8);
    const CoeffTable in = hex_coeffs_integer({2, 1, 3});
    CHECK(fr.shift == 3);
    CHECK(fr.shift_convention == "M(k-a3)");
    for (int k1 = 0; k1 <= 8; ++k1)
        for (int k2 = 0; k2 <= 8; ++k2) CHECK(fr.at(k1, k2) == in.at(k1 - 3, k2 - 3));
}

TEST_CASE("fractional coefficient tails") {
    const Order a = Order::real({1.5, 2.1, 2});
    TruncationPolicy p;
    p.rel_tol = 1e-10;
    const CoeffTable automatic = hex_coeffs_fractional(a, p);
    CHECK(automatic.tail_bound > 0);
    CHECK(automatic.radius <= kMaxCoeffRadius);

    // the bound at radius r covers the mass actually present between r and a much larger radius
    const CoeffTable big = hex_coeffs_fractional(a, {}, 200);
    for (int r : {10, 20, 40, 60}) {
        const CoeffTable small = hex_coeffs_fractional(a, {}, r);
        const double present = big.abs_sum() - small.abs_sum();
        CHECK(small.tail_bound >= present);
        CHECK(small.tail_bound == doctest::Approx(coefficient_tail({1.5, 2.1, 2}, r, false)));
    }
    CHECK(coefficient_tail({1.5, 2.1, 2}, 60, false) < coefficient_tail({1.5, 2.1, 2}, 20, false));

    // entries decay and their sum tends to zero
    CHECK(std::abs(big.sum()) <= big.tail_bound + 1e-12);
}

TEST_CASE("integer hex spline values") {
    const Mesh3 m = hexagonal_mesh();
    const HexSpline hs = HexSpline::integer(m, {1, 1, 1});
    CHECK(hex_eval(hs, Vec2(0, 0)) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(hex_eval(hs, Vec2(5, 5)) == 0.0);
    CHECK(hex_eval(hs, Vec2(-3, 0.1)) == 0.0);
    const HexValue v = hex_eval_detailed(hs, Vec2(0.1, 0.2));
    CHECK(v.tail_bound == 0.0);

    const HexSpline h2 = HexSpline::integer(m, {2, 2, 2});
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const Vec2 x(u(rng), u(rng));
        CHECK(std::abs(hex_eval(h2, x) - 2.0 / std::sqrt(3.0) * condat_box_printed(2, x)) < 1e-12);
        // the hexagonal (n,n,n) spline is symmetric under x -> -x
        CHECK(std::abs(hex_eval(h2, x) - hex_eval(h2, -x)) < 1e-12);
    }
}

TEST_CASE("fractional evaluator at integer orders equals the integer spline") {
    const Mesh3 m = hexagonal_mesh();
    const HexSpline in = HexSpline::integer(m, {2, 1, 2});
    const HexSpline fr = HexSpline::fractional(m, Order::real({2, 1, 2}), 10);
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const Vec2 x(u(rng), u(rng));
        CHECK(std::abs(hex_eval(in, x) - hex_eval(fr, x)) < 1e-12);
    }
}

TEST_CASE("difference operator route on a general mesh") {
    const Mesh3 m = make_mesh3(Vec2(0.4, 1.2), Vec2(0.9, -0.7));
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 60; ++i) {
        const Vec2 x(u(rng), u(rng));
        const double a = box_from_difference(m, {2, 2, 1}, x);
        const double b = hex_eval_any_mesh(m, Order::real({2, 2, 1}), 0, x);
        CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("partition of unity on a general mesh") {
    const Mesh3 m = make_mesh3(Vec2(0.4, 1.2), Vec2(0.9, -0.7));
    const Mesh3 c = m.canonical_image();
    const HexSpline hs = HexSpline::integer(c, {1, 2, 1});
    const Mat2 M = m.M();
    std::mt19937_64 rng(54);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 10; ++i) {
        const Vec2 x(u(rng), u(rng));
        double s = 0;
        for (int j1 = -8; j1 <= 8; ++j1)
            for (int j2 = -8; j2 <= 8; ++j2) {
                const Vec2 y = x - M * Vec2(j1, j2);
                s += transform_eval([&](const Vec2& z) { return hex_eval(hs, z); }, Mat2(m.T.inverse()), y);
            }
        CHECK(s == doctest::Approx(1.0 / std::abs(M.determinant())).epsilon(1e-10));
    }
}

TEST_CASE("refinement masks") {
    const CoeffTable a = refinement_mask(Order::real({1, 1, 1}));
    CHECK(a.at(1, 1) == 2);
    for (auto [k1, k2] : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {2, 2}}) CHECK(a.at(k1, k2) == 1);
    CHECK(a.entries().size() == 7);
    CHECK(a.scale == 0.5);
    CHECK(a.sum() * a.scale == 4.0);

    const CoeffTable b = refinement_mask(Order::real({2, 3, 1}));
    for (const auto& [k1, k2, v] : b.entries()) CHECK(v == std::nearbyint(v));
    CHECK(b.sum() * b.scale == doctest::Approx(4.0));

    const CoeffTable f = refinement_mask(Order::real({1.5, 1.5, 1}), {}, 40);
    CHECK(std::abs(f.sum() * f.scale - 4.0) <= f.tail_bound * f.scale + 1e-12);
    CHECK_THROWS_AS(refinement_mask(Order::real({0.3, 0.3, 0.3})), Error);
}

TEST_CASE("two-scale relation") {
    const Mesh3 m = hexagonal_mesh();
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(-1.5, 2.5);
    const HexSpline h1 = HexSpline::integer(m, {2, 1, 1});
    for (int i = 0; i < 25; ++i) CHECK(two_scale_residual(h1, m.M() * Vec2(u(rng), u(rng))) < 1e-9);
    CHECK(two_scale_residual(h1, Vec2(40, 40)) == 0.0);

    const HexSpline hf = HexSpline::fractional(m, Order::real({1.5, 1.5, 1}), 30);
    const CoeffTable mask = refinement_mask(Order::real({1.5, 1.5, 1}), {}, 30);
    for (int i = 0; i < 10; ++i) CHECK(two_scale_residual(hf, mask, m.M() * Vec2(u(rng), u(rng))) < 1e-6);
}

TEST_CASE("table radius and non-canonical meshes") {
    CHECK(table_radius_for(3.2, 1.5) == 5);
    CHECK(table_radius_for(-4.0, 1.0) == 0);
    CHECK_THROWS_AS(HexSpline::integer(make_mesh3(Vec2(1, 1), Vec2(0, 1)), {1, 1, 1}), NotCanonical);
    CHECK_THROWS_AS(HexSpline::fractional(hexagonal_mesh(), Order::real({1.5, 1, 1}), -1), Error);
}
