#include "hexspline/oracle.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <memory>
#include <string>

namespace hexspline {

namespace {

const bool kGslHandlerOff = [] {
    gsl_set_error_handler_off();
    return true;
}();

struct Workspace {
    explicit Workspace(int n) : w(gsl_integration_workspace_alloc(std::size_t(n))) {}
    ~Workspace() { gsl_integration_workspace_free(w); }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
    gsl_integration_workspace* w;
};

double piece(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec) {
    if (!(hi > lo)) return 0.0;
    (void)kGslHandlerOff;
    Workspace ws(spec.max_subdivisions);
    gsl_function gf;
    gf.function = [](double u, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(u); };
    gf.params = const_cast<std::function<double(double)>*>(&f);
    double result = 0, err = 0;
    const int status = gsl_integration_qags(&gf, lo, hi, spec.abs_tol, spec.rel_tol, std::size_t(spec.max_subdivisions),
                                            ws.w, &result, &err);
    if (status != GSL_SUCCESS && err > std::max(spec.abs_tol, 1e-12 * std::abs(result))) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "quadrature failed on [%.6g, %.6g]: %s, error estimate %.3g, value %.6g", lo, hi,
                      gsl_strerror(status), err, result);
        throw QuadFail(buf);
    }
    return result;
}

// integral over [0, len] of g(d) with g ~ d^(beta-1) at d = 0, after d = len s^(1/beta);
// g takes the distance to the singular endpoint so that it is never recovered by cancellation
double absorb_endpoint(const std::function<double(double)>& g, double len, double beta, const QuadratureSpec& spec) {
    std::function<double(double)> h = [&](double s) {
        if (s <= 0) return 0.0;
        const double r = std::pow(s, 1.0 / beta);
        return g(len * r) * len * r / (beta * s);
    };
    return piece(h, 0.0, 1.0, spec);
}

bool is_int(double v) { return std::abs(v - std::nearbyint(v)) < 1e-12; }

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double inductive_level(const std::vector<Vec2>& knots, std::size_t count, const Vec2& x, const QuadratureSpec& spec) {
    if (count == 2) {
        Mat2 m;
        m.col(0) = knots[0];
        m.col(1) = knots[1];
        const Vec2 c = m.inverse() * x;
        return (c.x() >= 0 && c.y() >= 0) ? 1.0 / std::abs(m.determinant()) : 0.0;
    }
    const Vec2& y = knots[count - 1];
    std::vector<double> cuts{0.0};
    for (std::size_t k = 0; k + 1 < count; ++k) {
        const double cy = cross(y, knots[k]);
        if (std::abs(cy) < 1e-14) continue;
        const double t = cross(x, knots[k]) / cy;
        if (t > 0) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    std::function<double(double)> f = [&](double t) { return inductive_level(knots, count - 1, x - t * y, spec); };
    double sum = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += piece(f, cuts[i], cuts[i + 1], spec);
    return sum;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0)) throw Error("QuadratureSpec: abs_tol must be positive");
    std::vector<double> cuts{lo};
    for (double s : spec.split_points)
        if (s > lo && s < hi) cuts.push_back(s);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += piece(f, cuts[i], cuts[i + 1], spec);
    return sum;
}

double F_quadrature(int n, int m, int l, double x, double a, double b, const QuadratureSpec& spec) {
    if (!(b < a && a < x)) throw DomainOrder("F_quadrature requires b < a < x");
    const double norm = std::tgamma(n) * std::tgamma(m) * std::tgamma(l);
    std::function<double(double)> f = [&](double u) {
        return std::pow(u - b, n - 1) * std::pow(u - a, m - 1) * std::pow(x - u, l - 1);
    };
    return integrate(f, a, x, spec) / norm;
}

double cone_quadrature(const Mesh3& mesh, const std::array<double, 3>& alpha, const Vec2& x,
                       const QuadratureSpec& spec) {
    if (!mesh.is_canonical()) throw NotCanonical("cone_quadrature needs x3 = (1,0)");
    for (double v : alpha)
        if (!(v > 0)) throw Error("cone orders must be positive");
    const Mat2 inv = mesh.M().inverse();
    // <(u, x2), dual_k> = u - r_k because the first dual coordinate is 1 on a canonical mesh
    const double r1 = -inv(0, 1) * x.y() / inv(0, 0);
    const double r2 = -inv(1, 1) * x.y() / inv(1, 0);
    const double lo = std::max(r1, r2);
    if (!(x.x() > lo)) return 0.0;
    const double K = 1.0 / (std::abs(mesh.M().determinant()) * std::tgamma(alpha[0]) * std::tgamma(alpha[1]) *
                            std::tgamma(alpha[2]));
    const double len = x.x() - lo;
    const double gap = std::abs(r1 - r2);
    // factors in terms of the distance d above lo (lower side) or below x1 (upper side)
    auto factors = [&](double above, double below) {
        if (above <= 0 || below <= 0) return 0.0;
        const double t1 = r1 >= r2 ? above : above + gap;
        const double t2 = r1 >= r2 ? above + gap : above;
        return std::pow(t1, alpha[0] - 1) * std::pow(t2, alpha[1] - 1) * std::pow(below, alpha[2] - 1);
    };
    std::function<double(double)> lower = [&](double d) { return factors(d, len - d); };
    std::function<double(double)> upper = [&](double d) { return factors(len - d, d); };

    // exponent of the factor(s) vanishing at the lower limit
    double beta_lo;
    if (gap <= 1e-14 * (1 + std::abs(r1)))
        beta_lo = alpha[0] + alpha[1] - 1;
    else
        beta_lo = r1 > r2 ? alpha[0] : alpha[1];
    const double beta_hi = alpha[2];
    const double half = 0.5 * len;
    // the other root sits gap below lo; grade the pieces so it never looks close
    double first = half;
    double left = 0;
    if (gap > 0 && gap < half) {
        first = gap;
        for (double a = first; a < half; a = std::min(half, 2.0 * a)) left += integrate(lower, a, std::min(half, 2.0 * a), spec);
    }
    left += is_int(beta_lo) ? integrate(lower, 0.0, first, spec) : absorb_endpoint(lower, first, beta_lo, spec);
    const double right = is_int(beta_hi) ? integrate(upper, 0.0, half, spec) : absorb_endpoint(upper, half, beta_hi, spec);
    return K * (left + right);
}

double cone_inductive(const std::vector<Vec2>& knots, const Vec2& x, const QuadratureSpec& spec) {
    if (knots.size() < 2) throw Error("cone_inductive needs at least two knots");
    if (knots.size() > 6) throw Error("cone_inductive is limited to six knots");
    if (std::abs(cross(knots[0], knots[1])) < 1e-12 * knots[0].norm() * knots[1].norm())
        throw SingularKnots("first two knots must be linearly independent");
    return inductive_level(knots, knots.size(), x, spec);
}

}  // namespace hexspline
