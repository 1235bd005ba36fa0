#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "hexspline/errors.hpp"
#include "hexspline/special.hpp"

namespace hexspline {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Knot multiplicities generalized to complex weights with positive real part.
struct Order {
    std::vector<cplx> values;
    std::vector<int> sigma;
    cplx total{0.0};

    static Order make(std::vector<cplx> values);
    static Order real(const std::vector<double>& values);

    std::size_t size() const { return values.size(); }
    bool is_real() const;
    bool is_integer() const;
    std::vector<double> real_values() const;
    std::vector<int> integer_values() const;
    std::string to_string() const;
};

struct KnotBasis {
    std::vector<Eigen::VectorXd> knots;
    Order orders;
    std::vector<Eigen::VectorXd> dual;
    double detM = 0;

    int dim() const { return int(knots.size()); }
    Eigen::MatrixXd matrix() const;
};

KnotBasis make_knot_basis(const std::vector<Eigen::VectorXd>& knots, const Order& orders);
KnotBasis make_knot_basis(const std::vector<Vec2>& knots, const Order& orders);

struct Mesh3 {
    Vec2 x1, x2, x3;
    Mat2 T;
    double detT = 0;

    Mat2 M() const;
    bool is_canonical(double tol = 1e-12) const;
    // Knots T x1, T x2 with third direction (1,0).
    Mesh3 canonical_image() const;
};

Mesh3 make_mesh3(const Vec2& x1, const Vec2& x2);

// Hexagonal knots x1 = (1/2, -sqrt3/2), x2 = (1/2, sqrt3/2).
Mesh3 hexagonal_mesh();

// |det A|^{-1} value_at(A^{-1} x): evaluates on knots {A x^k} from an evaluator on {x^k}.
template <class F>
auto transform_eval(F&& value_at, const Mat2& A, const Vec2& x) {
    const double det = A.determinant();
    const double scale = A.cwiseAbs().maxCoeff();
    if (!(std::abs(det) > 1e-14 * scale * scale)) throw SingularTransform("transform_eval: singular matrix");
    const Vec2 y = A.inverse() * x;
    using R = std::decay_t<decltype(value_at(y))>;
    return R(value_at(y) / std::abs(det));
}

}  // namespace hexspline
