#include "hexspline/hex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hexspline {

namespace {

long long binom_int(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::array<double, 3> real3(const Order& alpha) {
    if (alpha.size() != 3) throw Error("hex splines need three order components");
    const auto v = alpha.real_values();
    for (double a : v)
        if (!(a > 0)) throw Error("hex orders must be positive");
    return {v[0], v[1], v[2]};
}

// Cauchy product of the three binomial series; alternating signs for the hex symbol,
// plain for the refinement mask. Support k >= 0.
CoeffTable binomial_product_table(const std::array<double, 3>& alpha, int radius, bool mask) {
    CoeffTable t;
    t.k1min = t.k2min = 0;
    t.k1max = t.k2max = radius;
    t.radius = radius;
    t.shift = alpha[2];
    t.shift_convention = "M(k-a3)";
    const int n = radius + 1;
    std::vector<double> b1(n), b2(n), b3(n);
    for (int i = 0; i < n; ++i) {
        const double sign = (mask || i % 2 == 0) ? 1.0 : -1.0;
        b1[i] = sign * gen_binomial(alpha[0], i);
        b2[i] = sign * gen_binomial(alpha[1], i);
        b3[i] = sign * gen_binomial(alpha[2], i);
    }
    int l_cap = radius;
    if (near_integer(alpha[2])) l_cap = std::min(radius, int(std::nearbyint(alpha[2])));
    t.data.assign(std::size_t(n) * n, 0.0);
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            double s = 0;
            const int top = std::min({k1, k2, l_cap});
            for (int l = 0; l <= top; ++l) s += b1[k1 - l] * b2[k2 - l] * b3[l];
            t.data[std::size_t(k1) * n + k2] = s;
        }
    }
    return t;
}

std::vector<double> shell_sums(const CoeffTable& t) {
    std::vector<double> s(std::size_t(t.radius) + 1, 0.0);
    for (int k1 = t.k1min; k1 <= t.k1max; ++k1)
        for (int k2 = t.k2min; k2 <= t.k2max; ++k2) {
            const int r = std::max(std::abs(k1), std::abs(k2));
            if (r <= t.radius) s[r] += std::abs(t.at(k1, k2));
        }
    return s;
}

// Power-law continuation of the shell sums S_r ~ A r^(-p), p = 1 + min non-integer order.
double extrapolated_tail(const CoeffTable& t, const std::array<double, 3>& alpha) {
    double amin = 1e300;
    for (double a : alpha)
        if (!near_integer(a)) amin = std::min(amin, a);
    if (amin == 1e300) return 0.0;
    const double p = 1.0 + amin;
    const auto s = shell_sums(t);
    const int R = t.radius;
    if (R < 2) return std::numeric_limits<double>::infinity();
    double A = 0;
    for (int r = std::max(1, R / 2); r <= R; ++r) A = std::max(A, s[r] * std::pow(double(r), p));
    return A * std::pow(double(R), 1.0 - p) / (p - 1.0);
}

CoeffTable trimmed(const CoeffTable& full, int radius) {
    CoeffTable t = full;
    t.k1max = t.k2max = radius;
    t.radius = radius;
    const int n = radius + 1;
    const int nf = full.k2max - full.k2min + 1;
    t.data.assign(std::size_t(n) * n, 0.0);
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2) t.data[std::size_t(k1) * n + k2] = full.data[std::size_t(k1) * nf + k2];
    return t;
}

CoeffTable fractional_table(const Order& order, const TruncationPolicy& policy, int radius, bool mask) {
    policy.validate();
    const auto alpha = real3(order);
    CoeffTable t;
    if (radius >= 0) {
        t = binomial_product_table(alpha, radius, mask);
        t.tail_bound = extrapolated_tail(t, alpha);
        if (order.is_integer()) {
            // finite support: exact tail from the complete table
            const auto n = order.integer_values();
            const int support = std::max(n[0], n[1]) + n[2];
            if (radius < support) {
                const CoeffTable full = binomial_product_table(alpha, support, mask);
                t.tail_bound = full.abs_sum() - t.abs_sum();
            }
        }
    } else {
        int cap = kMaxCoeffRadius;
        if (order.is_integer()) {
            const auto n = order.integer_values();
            cap = std::max(n[0], n[1]) + n[2];
        }
        const CoeffTable full = binomial_product_table(alpha, cap, mask);
        int keep = 0;
        for (int k1 = 0; k1 <= cap; ++k1)
            for (int k2 = 0; k2 <= cap; ++k2)
                if (std::abs(full.at(k1, k2)) >= policy.rel_tol) keep = std::max({keep, k1, k2});
        t = trimmed(full, keep);
        t.tail_bound = (full.abs_sum() - t.abs_sum()) + extrapolated_tail(full, alpha);
    }
    t.order = order;
    return t;
}

}  // namespace

double CoeffTable::at(int k1, int k2) const {
    if (k1 < k1min || k1 > k1max || k2 < k2min || k2 > k2max) return 0.0;
    return data[std::size_t(k1 - k1min) * std::size_t(k2max - k2min + 1) + std::size_t(k2 - k2min)];
}

double CoeffTable::sum() const {
    double s = 0;
    for (double v : data) s += v;
    return s;
}

double CoeffTable::abs_sum() const {
    double s = 0;
    for (double v : data) s += std::abs(v);
    return s;
}

std::vector<std::tuple<int, int, double>> CoeffTable::entries() const {
    std::vector<std::tuple<int, int, double>> out;
    for (int k1 = k1min; k1 <= k1max; ++k1)
        for (int k2 = k2min; k2 <= k2max; ++k2)
            if (at(k1, k2) != 0.0) out.emplace_back(k1, k2, at(k1, k2));
    return out;
}

CoeffTable hex_coeffs_integer(const std::array<int, 3>& n) {
    const auto [n1, n2, n3] = n;
    if (n1 < 1 || n2 < 1 || n3 < 1) throw Error("integer hex orders must be positive");
    CoeffTable t;
    t.k1min = -n3;
    t.k1max = n1;
    t.k2min = -n3;
    t.k2max = n2;
    t.radius = std::max({n1, n2, n3});
    t.order = Order::real({double(n1), double(n2), double(n3)});
    t.shift = 0;
    t.shift_convention = "Mk";
    t.data.assign(std::size_t(n1 + n3 + 1) * std::size_t(n2 + n3 + 1), 0.0);
    for (int k1 = -n3; k1 <= n1; ++k1) {
        for (int k2 = -n3; k2 <= n2; ++k2) {
            long long c = 0;
            const int lo = std::max({n3 - n1 + k1, n3 - n2 + k2, 0});
            const int hi = n3 + std::min({k1, k2, 0});
            for (int m = lo; m <= hi; ++m) {
                const long long term = binom_int(n1, n1 - n3 - k1 + m) * binom_int(n2, n2 - n3 - k2 + m) * binom_int(n3, m);
                c += ((k1 + k2 + m) % 2 == 0) ? term : -term;
            }
            t.data[std::size_t(k1 + n3) * std::size_t(n2 + n3 + 1) + std::size_t(k2 + n3)] = double(c);
        }
    }
    return t;
}

CoeffTable hex_coeffs_fractional(const Order& alpha, const TruncationPolicy& policy, int radius) {
    return fractional_table(alpha, policy, radius, false);
}

CoeffTable refinement_mask(const Order& alpha, const TruncationPolicy& policy, int radius) {
    const auto a = real3(alpha);
    const double total = a[0] + a[1] + a[2];
    if (!(total > 1)) throw Error("refinement mask needs |alpha| > 1");
    CoeffTable t = fractional_table(alpha, policy, radius, true);
    t.scale = std::pow(2.0, 2.0 - total);
    return t;
}

double coefficient_tail(const std::array<double, 3>& alpha, int radius, bool mask) {
    const Order o = Order::real({alpha[0], alpha[1], alpha[2]});
    return fractional_table(o, {}, radius, mask).tail_bound;
}

HexSpline::HexSpline(const Mesh3& mesh, const Order& order, CoeffTable coeffs, const TruncationPolicy& policy)
    : mesh_(mesh), order_(order), coeffs_(std::move(coeffs)), policy_(policy) {
    if (!mesh.is_canonical()) throw NotCanonical("hex splines are evaluated on meshes with x3 = (1,0)");
    const auto a = real3(order);
    cone_ = std::make_shared<const ThreeDirCone>(mesh, a, policy);
}

HexSpline HexSpline::integer(const Mesh3& mesh, const std::array<int, 3>& n) {
    return HexSpline(mesh, Order::real({double(n[0]), double(n[1]), double(n[2])}), hex_coeffs_integer(n), {});
}

HexSpline HexSpline::fractional(const Mesh3& mesh, const Order& alpha, int eval_radius, const TruncationPolicy& policy) {
    if (eval_radius < 0) throw Error("eval_radius must be nonnegative");
    return HexSpline(mesh, alpha, hex_coeffs_fractional(alpha, policy, eval_radius), policy);
}

HexSpline HexSpline::make(const Mesh3& mesh, const Order& alpha, int eval_radius, const TruncationPolicy& policy) {
    if (alpha.is_integer()) {
        const auto n = alpha.integer_values();
        return integer(mesh, {n[0], n[1], n[2]});
    }
    return fractional(mesh, alpha, eval_radius, policy);
}

HexValue hex_eval_detailed(const HexSpline& hs, const Vec2& x) {
    const CoeffTable& t = hs.coeffs();
    const Mat2 M = hs.mesh().M();
    const Vec2 u = M.inverse() * x;
    const ThreeDirCone& cone = hs.cone();
    const Vec2 base = x + t.shift * hs.mesh().x3;
    if (hs.order().is_integer()) {
        // support {s1 x1 + s2 x2 - s3 x3 : 0 <= s_j <= n_j} in dual coordinates
        const auto n = hs.order().integer_values();
        const double d = u.x() - u.y();
        if (u.x() < -n[2] || u.x() > n[0] || u.y() < -n[2] || u.y() > n[1] || d < -n[1] || d > n[0]) return {};
    }

    // translates with k_j > u_j + shift lie outside the cone
    const double lim1 = std::floor(u.x() + t.shift + 1e-12), lim2 = std::floor(u.y() + t.shift + 1e-12);
    const int top1 = int(std::min<double>(t.k1max, lim1));
    const int top2 = int(std::min<double>(t.k2max, lim2));
    HexValue out;
    for (int k1 = t.k1min; k1 <= top1; ++k1) {
        for (int k2 = t.k2min; k2 <= top2; ++k2) {
            const double c = t.at(k1, k2);
            if (c == 0.0) continue;
            out.value += c * cone(base - M * Vec2(k1, k2));
        }
    }
    if ((lim1 > t.k1max || lim2 > t.k2max) && t.tail_bound > 0) {
        out.tail_bound = t.tail_bound * std::abs(cone(base));
    }
    return out;
}

double hex_eval(const HexSpline& hs, const Vec2& x) { return hex_eval_detailed(hs, x).value; }

double hex_eval_any_mesh(const Mesh3& mesh, const Order& alpha, int eval_radius, const Vec2& x,
                         const TruncationPolicy& policy) {
    if (mesh.is_canonical()) return hex_eval(HexSpline::make(mesh, alpha, eval_radius, policy), x);
    const HexSpline hs = HexSpline::make(mesh.canonical_image(), alpha, eval_radius, policy);
    return transform_eval([&](const Vec2& y) { return hex_eval(hs, y); }, mesh.T.inverse(), x);
}

int table_radius_for(double dual_coordinate_bound, double alpha3) {
    return std::max(0, int(std::ceil(dual_coordinate_bound + alpha3)));
}

double box_from_difference(const Mesh3& mesh, const std::array<int, 3>& n, const Vec2& x) {
    const auto [n1, n2, n3] = n;
    if (n1 < 1 || n2 < 1 || n3 < 1) throw Error("box_from_difference needs positive integer orders");
    const std::array<double, 3> alpha{double(n1), double(n2), double(n3)};
    const Mesh3 canon = mesh.is_canonical() ? mesh : mesh.canonical_image();
    const ThreeDirCone cone(canon, alpha);
    const Mat2 Tinv = mesh.is_canonical() ? Mat2::Identity() : Mat2(mesh.T.inverse());
    auto C = [&](const Vec2& y) { return transform_eval([&](const Vec2& z) { return cone(z); }, Tinv, y); };

    // B = nabla_{x1}^{n1} nabla_{x2}^{n2} Delta_{x3}^{n3} C
    double sum = 0;
    for (int j = 0; j <= n1; ++j)
        for (int m = 0; m <= n2; ++m)
            for (int l = 0; l <= n3; ++l) {
                const double w = double(binom_int(n1, j) * binom_int(n2, m) * binom_int(n3, l));
                const double sign = ((j + m + n3 - l) % 2 == 0) ? 1.0 : -1.0;
                sum += sign * w * C(x - double(j) * mesh.x1 - double(m) * mesh.x2 + double(l) * mesh.x3);
            }
    return sum;
}

double two_scale_residual(const HexSpline& hs, const CoeffTable& mask, const Vec2& x) {
    const Mat2 M = hs.mesh().M();
    const Vec2 u = M.inverse() * x;
    const double a3 = real3(hs.order())[2];
    const double lhs = hex_eval(hs, x);
    const int top1 = int(std::min<double>(mask.k1max, std::floor(2 * u.x() + mask.shift + a3 + 1e-12)));
    const int top2 = int(std::min<double>(mask.k2max, std::floor(2 * u.y() + mask.shift + a3 + 1e-12)));
    double rhs = 0;
    for (int k1 = mask.k1min; k1 <= top1; ++k1)
        for (int k2 = mask.k2min; k2 <= top2; ++k2) {
            const double h = mask.at(k1, k2);
            if (h == 0.0) continue;
            rhs += h * hex_eval(hs, 2.0 * x - M * (Vec2(k1, k2) - mask.shift * Vec2(1, 1)));
        }
    return std::abs(lhs - mask.scale * rhs);
}

double two_scale_residual(const HexSpline& hs, const Vec2& x) {
    const CoeffTable mask = refinement_mask(hs.order(), hs.policy(), hs.order().is_integer() ? -1 : hs.eval_radius());
    return two_scale_residual(hs, mask, x);
}

}  // namespace hexspline
