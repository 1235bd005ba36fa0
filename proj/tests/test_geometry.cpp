#include <cmath>
#include <random>

#include "doctest.h"
#include "hexspline/cone.hpp"
#include "hexspline/geometry.hpp"

using namespace hexspline;

TEST_CASE("Order construction") {
    const Order o = Order::make({cplx(1.0, 0.5), 1.0, 2.0});
    CHECK(o.size() == 3);
    CHECK_FALSE(o.is_real());
    CHECK(o.total == cplx(4.0, 0.5));

    const Order n = Order::real({1, 2, 3});
    CHECK(n.is_real());
    CHECK(n.is_integer());
    CHECK(n.integer_values() == std::vector<int>{1, 2, 3});
    CHECK_FALSE(Order::real({1.5, 2, 3}).is_integer());

    CHECK_THROWS_AS(Order::real({1, 0, 1}), Error);
    CHECK_THROWS_AS(Order::make({cplx(-0.5, 1.0)}), Error);
}

TEST_CASE("dual basis is biorthogonal to the knots") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 50; ++i) {
        const int s = 2 + i % 3;
        std::vector<Eigen::VectorXd> knots;
        for (int k = 0; k < s; ++k) {
            Eigen::VectorXd v(s);
            for (int j = 0; j < s; ++j) v[j] = u(rng);
            knots.push_back(v);
        }
        std::vector<double> ords(std::size_t(s), 1.0);
        KnotBasis b;
        try {
            b = make_knot_basis(knots, Order::real(ords));
        } catch (const SingularKnots&) {
            continue;
        }
        for (int k = 0; k < s; ++k)
            for (int l = 0; l < s; ++l) CHECK(std::abs(b.dual[k].dot(b.knots[l]) - (k == l ? 1.0 : 0.0)) < 1e-10);
        CHECK(std::abs(std::abs(b.matrix().determinant()) - std::abs(b.detM)) < 1e-10 * std::abs(b.detM));
    }
}

TEST_CASE("singular knots are rejected") {
    CHECK_THROWS_AS(make_knot_basis(std::vector<Vec2>{Vec2(1, 2), Vec2(2, 4)}, Order::real({1, 1})), SingularKnots);
    CHECK_THROWS_AS(make_mesh3(Vec2(1, 1), Vec2(-1, -1)), SingularKnots);
}

TEST_CASE("3-directional meshes and their canonical image") {
    const Mesh3 h = hexagonal_mesh();
    CHECK(h.is_canonical());
    CHECK(h.x1.x() == doctest::Approx(0.5));
    CHECK(h.x1.y() == doctest::Approx(-std::sqrt(3.0) / 2));
    CHECK(h.x2.y() == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(std::abs(h.M().determinant()) == doctest::Approx(std::sqrt(3.0) / 2));

    const Mesh3 m = make_mesh3(Vec2(0.3, 1.7), Vec2(1.1, -0.4));
    CHECK_FALSE(m.is_canonical());
    CHECK((m.x3 - (m.x1 + m.x2)).norm() < 1e-15);
    CHECK((m.T * m.x3 - Vec2(1, 0)).norm() < 1e-14);
    const Mesh3 c = m.canonical_image();
    CHECK(c.is_canonical());
    CHECK((c.x1 - m.T * m.x1).norm() < 1e-14);
    CHECK((c.x2 - m.T * m.x2).norm() < 1e-14);
}

TEST_CASE("knot transformation rule for product cones") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-2, 2), a(0.5, 3.0);
    for (int i = 0; i < 100; ++i) {
        const Vec2 k1(u(rng), u(rng)), k2(u(rng), u(rng));
        Mat2 A;
        A << u(rng), u(rng), u(rng), u(rng);
        if (std::abs(A.determinant()) < 0.2 || std::abs(k1.x() * k2.y() - k1.y() * k2.x()) < 0.2) continue;
        const Order o = Order::real({a(rng), a(rng)});
        const KnotBasis base = make_knot_basis(std::vector<Vec2>{k1, k2}, o);
        const KnotBasis moved = make_knot_basis(std::vector<Vec2>{A * k1, A * k2}, o);
        const Vec2 x(u(rng), u(rng));
        const double direct = eval_product_form(moved, Eigen::VectorXd(x)).real();
        const double via = transform_eval([&](const Vec2& y) { return eval_product_form(base, Eigen::VectorXd(y)).real(); }, A, x);
        CHECK(std::abs(direct - via) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
    CHECK_THROWS_AS(transform_eval([](const Vec2&) { return 1.0; }, Mat2::Zero(), Vec2(1, 1)), SingularTransform);
}
