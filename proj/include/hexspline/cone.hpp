#pragma once

#include <array>
#include <variant>

#include "hexspline/geometry.hpp"
#include "hexspline/special.hpp"

namespace hexspline {

enum class ConeKind { SKnotProduct, ThreeDirectional };

struct ConeSpline {
    std::variant<KnotBasis, Mesh3> basis;
    Order order;
    ConeKind kind = ConeKind::SKnotProduct;

    static ConeSpline product(const KnotBasis& b);
    static ConeSpline three_directional(const Mesh3& mesh, const Order& order);
};

// Cone spline on a canonical 3-directional mesh, with per-point work reduced to the branch formula.
class ThreeDirCone {
public:
    ThreeDirCone(const Mesh3& canonical_mesh, const std::array<double, 3>& alpha,
                 const TruncationPolicy& policy = {});

    double operator()(const Vec2& x) const;
    // Hypergeometric formula regardless of whether the orders are integers.
    double fractional_branch(const Vec2& x) const;

    bool integer() const { return integer_; }
    // x1^1 and x1^2 after orienting the mesh so that x1^2 > 0
    double x11() const { return a_; }
    double x12() const { return h_; }
    const std::array<double, 3>& oriented_alpha() const { return alpha_; }

private:
    double eval_integer(double x1, double x2) const;
    double eval_fractional(double x1, double x2) const;

    double a_ = 0, h_ = 0;
    std::array<double, 3> alpha_{};
    std::array<int, 3> n_{};
    bool integer_ = false;
    TruncationPolicy policy_;
    // branch prefactors 1/(h Gamma(.) Gamma(.)) and the axis constant
    double pre_pos_ = 0, pre_neg_ = 0, axis_ = 0;
    std::vector<double> w_pos_, w_neg_;
};

cplx eval_product_form(const KnotBasis& basis, const Eigen::VectorXd& x);
cplx eval_product_form(const ConeSpline& cs, const Eigen::VectorXd& x);

double eval_3dir_integer(const Mesh3& mesh, const std::array<int, 3>& n, const Vec2& x);
double eval_3dir_fractional(const Mesh3& mesh, const Order& alpha, const Vec2& x,
                            const TruncationPolicy& policy = {});

// Canonicalizes 3-directional meshes through the knot-transformation rule and dispatches.
cplx eval_cone(const ConeSpline& cs, const Eigen::VectorXd& x, const TruncationPolicy& policy = {});

double recurrence_residual(const KnotBasis& basis, const Order& alpha, const Eigen::VectorXd& x);

double F_closed(int n, int m, int l, double x, double a, double b);

// Partial sums of sum_k (-1)^k / (k! Gamma(a3 - k) (a1 + a2 + k - 1)), which equals
// Gamma(a1 + a2 - 1) / Gamma(|a| - 1) and terminates for integer a3.
double axis_series(const std::array<double, 3>& alpha, int terms);
double axis_closed_form(const std::array<double, 3>& alpha);

}  // namespace hexspline
