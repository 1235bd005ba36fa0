#include <cmath>
#include <random>

#include "doctest.h"
#include "hexspline/cone.hpp"
#include "hexspline/oracle.hpp"

using namespace hexspline;

TEST_CASE("integrate handles polynomials and split points") {
    CHECK(integrate([](double u) { return u * u; }, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-14));
    QuadratureSpec spec;
    spec.split_points = {1.0};
    CHECK(integrate([](double u) { return u < 1.0 ? 1.0 : 2.0; }, 0.0, 2.0, spec) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    QuadratureSpec bad;
    bad.abs_tol = 0;
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), Error);
}

TEST_CASE("F_quadrature frozen value") {
    CHECK(std::abs(F_quadrature(2, 3, 2, 2.0, 1.0, -1.0) - 13.0 / 120.0) < 1e-14);
    CHECK_THROWS_AS(F_quadrature(1, 1, 1, 0.0, 1.0, 0.5), DomainOrder);
}

TEST_CASE("cone quadrature, frozen fractional values") {
    const Mesh3 m = make_mesh3(Vec2(0.5, 1.0), Vec2(0.5, -1.0));
    CHECK(std::abs(cone_quadrature(m, {1.5, 1.25, 1.0 / 3.0}, Vec2(0.8, 0.3)) - 0.882021130820850258563531809411) < 1e-10);
    CHECK(std::abs(cone_quadrature(m, {0.6, 0.6, 2.0}, Vec2(0.8, 0.3)) - 0.332737462336303568440330747866) < 1e-10);
    CHECK(cone_quadrature(m, {1, 1, 1}, Vec2(-0.5, 0.0)) == 0.0);
    CHECK_THROWS_AS(cone_quadrature(make_mesh3(Vec2(1, 1), Vec2(0, 1)), {1, 1, 1}, Vec2(1, 0)), NotCanonical);
}

TEST_CASE("lowest-order cone is the normalized indicator of the cone") {
    // (1,1,1): the line integral of the indicator along x3 has length t with density 1/|det|
    const Mesh3 m = hexagonal_mesh();
    const double det = std::abs(m.M().determinant());
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const Vec2 x(u(rng), u(rng) - 1.0);
        const double t = x.x() - std::abs(x.y()) / std::sqrt(3.0);
        const double want = t > 0 ? t / det : 0.0;
        CHECK(std::abs(cone_quadrature(m, {1, 1, 1}, x) - want) < 1e-12);
    }
}

TEST_CASE("inductive definition") {
    const Mesh3 m = hexagonal_mesh();
    const double det = std::abs(m.M().determinant());
    CHECK(cone_inductive({m.x1, m.x2}, Vec2(1.0, 0.1)) == doctest::Approx(1.0 / det));
    CHECK(cone_inductive({m.x1, m.x2}, Vec2(-1.0, 0.1)) == 0.0);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const Vec2 x(u(rng), u(rng) - 1.0);
        CHECK(std::abs(cone_inductive({m.x1, m.x2, m.x3, m.x3}, x) - eval_3dir_integer(m, {1, 1, 2}, x)) < 1e-7);
    }
    CHECK_THROWS_AS(cone_inductive({Vec2(1, 0), Vec2(2, 0), Vec2(0, 1)}, Vec2(1, 1)), SingularKnots);
    CHECK_THROWS_AS(cone_inductive(std::vector<Vec2>(7, Vec2(1, 0)), Vec2(1, 1)), Error);
}
