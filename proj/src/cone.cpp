#include "hexspline/cone.hpp"

#include <cmath>
#include <limits>

namespace hexspline {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx product_value(const KnotBasis& basis, const Order& order, const Eigen::VectorXd& x) {
    if (int(order.size()) != basis.dim()) throw Error("order length must equal the dimension");
    if (x.size() != basis.dim()) throw Error("point dimension does not match the knots");
    cplx v = 1.0 / basis.detM;
    for (int k = 0; k < basis.dim(); ++k) {
        const double t = x.dot(basis.dual[k]);
        if (t < 0) return 0.0;
        v *= truncated_power(t, order.values[k] - 1.0) * recip_gamma(order.values[k]);
    }
    return v;
}

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

ConeSpline ConeSpline::product(const KnotBasis& b) {
    return ConeSpline{b, b.orders, ConeKind::SKnotProduct};
}

ConeSpline ConeSpline::three_directional(const Mesh3& mesh, const Order& order) {
    if (order.size() != 3) throw Error("3-directional cone splines need three order components");
    return ConeSpline{mesh, order, ConeKind::ThreeDirectional};
}

ThreeDirCone::ThreeDirCone(const Mesh3& mesh, const std::array<double, 3>& alpha,
                           const TruncationPolicy& policy)
    : policy_(policy) {
    if (!mesh.is_canonical()) throw NotCanonical("mesh must have x3 = (1,0)");
    for (double v : alpha)
        if (!(v > 0)) throw Error("cone orders must be positive");
    alpha_ = alpha;
    if (mesh.x1.y() > 0) {
        a_ = mesh.x1.x();
        h_ = mesh.x1.y();
    } else {
        a_ = mesh.x2.x();
        h_ = mesh.x2.y();
        std::swap(alpha_[0], alpha_[1]);
    }

    integer_ = true;
    for (int j = 0; j < 3; ++j) {
        if (!near_integer(alpha_[j])) integer_ = false;
        n_[j] = int(std::nearbyint(alpha_[j]));
    }
    if (integer_) {
        const auto [n1, n2, n3] = n_;
        for (int k = 0; k < n1; ++k)
            w_pos_.push_back(gen_binomial(double(n2 + k - 1), k) / (factorial(n1 - 1 - k) * factorial(n2 + n3 + k - 1)));
        for (int k = 0; k < n2; ++k)
            w_neg_.push_back(gen_binomial(double(n1 + k - 1), k) / (factorial(n2 - 1 - k) * factorial(n1 + n3 + k - 1)));
    }

    const auto [a1, a2, a3] = alpha_;
    pre_pos_ = recip_gamma(a1) * recip_gamma(a2 + a3) / h_;
    pre_neg_ = recip_gamma(a2) * recip_gamma(a1 + a3) / h_;
    axis_ = a1 + a2 > 1 ? axis_closed_form(alpha_) * recip_gamma(a1) * recip_gamma(a2) / h_ : kInf;
}

double ThreeDirCone::operator()(const Vec2& x) const {
    return integer_ ? eval_integer(x.x(), x.y()) : eval_fractional(x.x(), x.y());
}

double ThreeDirCone::fractional_branch(const Vec2& x) const { return eval_fractional(x.x(), x.y()); }

double ThreeDirCone::eval_integer(double x1, double x2) const {
    const auto [n1, n2, n3] = n_;
    double sum = 0;
    if (x2 >= 0) {
        const double d = x2 / h_;
        const double t = x1 - a_ / h_ * x2;
        if (t <= 0) return 0.0;
        for (int k = 0; k < n1; ++k) sum += w_pos_[k] * ipow(d, n1 - 1 - k) * ipow(t, n2 + n3 + k - 1);
    } else {
        const double d = -x2 / h_;
        const double t = x1 - (a_ - 1.0) / h_ * x2;
        if (t <= 0) return 0.0;
        for (int k = 0; k < n2; ++k) sum += w_neg_[k] * ipow(d, n2 - 1 - k) * ipow(t, n1 + n3 + k - 1);
    }
    return sum / h_;
}

double ThreeDirCone::eval_fractional(double x1, double x2) const {
    const auto [a1, a2, a3] = alpha_;
    if (std::abs(x2) <= 1e-12 * (1.0 + std::abs(x1))) {
        if (x1 <= 0) return 0.0;
        return axis_ * std::pow(x1, a1 + a2 + a3 - 2.0);
    }
    if (x2 > 0) {
        const double d = x2 / h_;
        const double t = x1 - a_ / h_ * x2;
        if (t <= 0) return 0.0;
        const double f = gauss_2f1(1.0 - a1, a2, a2 + a3, -t / d, policy_);
        return pre_pos_ * std::pow(d, a1 - 1.0) * std::pow(t, a2 + a3 - 1.0) * f;
    }
    const double d = -x2 / h_;
    const double t = x1 - (a_ - 1.0) / h_ * x2;
    if (t <= 0) return 0.0;
    const double f = gauss_2f1(1.0 - a2, a1, a1 + a3, -t / d, policy_);
    return pre_neg_ * std::pow(d, a2 - 1.0) * std::pow(t, a1 + a3 - 1.0) * f;
}

cplx eval_product_form(const KnotBasis& basis, const Eigen::VectorXd& x) {
    return product_value(basis, basis.orders, x);
}

cplx eval_product_form(const ConeSpline& cs, const Eigen::VectorXd& x) {
    if (cs.kind != ConeKind::SKnotProduct) throw Error("eval_product_form needs an s-knot cone spline");
    return product_value(std::get<KnotBasis>(cs.basis), cs.order, x);
}

double eval_3dir_integer(const Mesh3& mesh, const std::array<int, 3>& n, const Vec2& x) {
    for (int v : n)
        if (v < 1) throw Error("integer orders must be positive");
    return ThreeDirCone(mesh, {double(n[0]), double(n[1]), double(n[2])})(x);
}

double eval_3dir_fractional(const Mesh3& mesh, const Order& alpha, const Vec2& x,
                            const TruncationPolicy& policy) {
    if (alpha.size() != 3) throw Error("3-directional cone splines need three order components");
    const auto v = alpha.real_values();
    // the hypergeometric branch formula, also at integer orders
    return ThreeDirCone(mesh, {v[0], v[1], v[2]}, policy).fractional_branch(x);
}

cplx eval_cone(const ConeSpline& cs, const Eigen::VectorXd& x, const TruncationPolicy& policy) {
    if (cs.kind == ConeKind::SKnotProduct) return eval_product_form(cs, x);
    if (!cs.order.is_real()) {
        throw UnsupportedOrder("complex orders on 3-directional meshes are only available in the Fourier domain");
    }
    if (x.size() != 2) throw Error("3-directional cone splines live in R^2");
    const Mesh3& mesh = std::get<Mesh3>(cs.basis);
    const auto v = cs.order.real_values();
    const std::array<double, 3> alpha{v[0], v[1], v[2]};
    const Vec2 p = x;
    if (mesh.is_canonical()) return ThreeDirCone(mesh, alpha, policy)(p);
    const ThreeDirCone cone(mesh.canonical_image(), alpha, policy);
    return transform_eval([&](const Vec2& y) { return cone(y); }, mesh.T.inverse(), p);
}

double recurrence_residual(const KnotBasis& basis, const Order& alpha, const Eigen::VectorXd& x) {
    const int s = basis.dim();
    if (int(alpha.size()) != s) throw Error("order length must equal the dimension");
    const auto v = alpha.real_values();
    double total = 0;
    for (double a : v) {
        if (!(a > 1)) throw Error("recurrence needs every order component above 1");
        total += a;
    }
    if (std::abs(total - s) < 1e-12) throw Error("recurrence needs |alpha| != s");

    const double lhs = product_value(basis, alpha, x).real();
    double rhs = 0;
    for (int k = 0; k < s; ++k) {
        std::vector<cplx> lowered(alpha.values);
        lowered[k] -= 1.0;
        rhs += x.dot(basis.dual[k]) * product_value(basis, Order::make(lowered), x).real();
    }
    return std::abs(lhs - rhs / (total - s));
}

double F_closed(int n, int m, int l, double x, double a, double b) {
    if (n < 1 || m < 1 || l < 1) throw Error("F_closed: orders must be positive integers");
    if (!(b < a && a < x)) throw DomainOrder("F_closed requires b < a < x");
    double sum = 0;
    for (int k = 0; k < n; ++k) {
        sum += gen_binomial(double(m + k - 1), k) * ipow(a - b, n - 1 - k) * ipow(x - a, m + l + k - 1) /
               (factorial(n - 1 - k) * factorial(m + l + k - 1));
    }
    return sum;
}

double axis_series(const std::array<double, 3>& alpha, int terms) {
    // r_k = 1 / (k! Gamma(a3 - k)), advanced by its term ratio to stay finite for large k
    double r = recip_gamma(alpha[2]);
    double sum = 0;
    double sign = 1;
    for (int k = 0; k < terms; ++k) {
        sum += sign * r / (alpha[0] + alpha[1] + k - 1.0);
        r *= (alpha[2] - k - 1.0) / (k + 1.0);
        sign = -sign;
    }
    return sum;
}

double axis_closed_form(const std::array<double, 3>& alpha) {
    return gamma(alpha[0] + alpha[1] - 1.0) * recip_gamma(alpha[0] + alpha[1] + alpha[2] - 1.0);
}

}  // namespace hexspline
