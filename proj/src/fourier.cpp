#include "hexspline/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hexspline {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double s) {
    if (std::abs(s) < 1e-6) return 1.0 - s * s / 6.0;
    return std::sin(s) / s;
}

std::array<double, 3> thetas(const Mesh3& mesh, const Vec2& omega) {
    return {omega.dot(mesh.x1), omega.dot(mesh.x2), omega.dot(mesh.x3)};
}

cplx factor_product(const std::array<cplx, 3>& factors, const Order& z) {
    if (z.size() != 3) throw Error("hex transforms need three order components");
    cplx v = 1.0;
    for (int k = 0; k < 3; ++k) {
        if (!(z.values[k].real() > 0)) throw Error("orders must have positive real part");
        v *= principal_pow(factors[k], z.values[k]);
    }
    return v;
}

cplx cone_factor(double t, cplx z) {
    if (t == 0.0) throw OnSingularSet("cone transform evaluated on <omega, x^k> = 0");
    return principal_pow(1.0 / cplx(0.0, t), z);
}

}  // namespace

cplx sinc_factor(double t) {
    if (std::abs(t) < 1e-6) {
        const double t2 = t * t;
        return cplx(1.0 - t2 / 6.0, -t / 2.0 + t * t2 / 24.0);
    }
    return (1.0 - std::exp(cplx(0.0, -t))) / cplx(0.0, t);
}

cplx principal_pow(cplx w, cplx z) {
    if (z == cplx(0.0)) return 1.0;
    if (w == cplx(0.0)) {
        if (z.real() > 0) return 0.0;
        return cplx(std::numeric_limits<double>::infinity());
    }
    return std::exp(z * std::log(w));
}

SymbolFactors symbol_factors(const Mesh3& mesh, const Vec2& omega) {
    SymbolFactors s;
    s.omega = omega;
    s.theta = thetas(mesh, omega);
    s.Omega = {sinc_factor(s.theta[0]), sinc_factor(s.theta[1]), sinc_factor(-s.theta[2])};
    for (int k = 0; k < 3; ++k) {
        s.arg[k] = std::arg(s.Omega[k]);
        s.log_abs[k] = std::log(std::abs(s.Omega[k]));
    }
    return s;
}

cplx hex_ft(const Mesh3& mesh, const Order& z, const Vec2& omega) {
    const auto t = thetas(mesh, omega);
    return factor_product({sinc_factor(t[0]), sinc_factor(t[1]), sinc_factor(-t[2])}, z);
}

cplx hex_ft_time_branch(const Mesh3& mesh, const Order& z, const Vec2& omega) {
    const auto t = thetas(mesh, omega);
    const cplx v = factor_product({sinc_factor(t[0]), sinc_factor(t[1]), sinc_factor(t[2])}, z);
    return v * std::exp(cplx(0.0, 1.0) * z.values[2] * t[2]);
}

cplx cone_ft(const Mesh3& mesh, const Order& z, const Vec2& omega) {
    if (z.size() != 3) throw Error("3-directional cone transforms need three order components");
    const auto t = thetas(mesh, omega);
    cplx v = 1.0;
    for (int k = 0; k < 3; ++k) v *= cone_factor(t[k], z.values[k]);
    return v;
}

cplx cone_ft(const KnotBasis& basis, const Order& z, const Eigen::VectorXd& omega) {
    if (int(z.size()) != basis.dim()) throw Error("order length must equal the dimension");
    cplx v = 1.0;
    for (int k = 0; k < basis.dim(); ++k) v *= cone_factor(omega.dot(basis.knots[k]), z.values[k]);
    return v;
}

ComplexFactorization complex_factorization(const Mesh3& mesh, const Order& z, const Vec2& omega) {
    if (z.size() != 3) throw Error("hex transforms need three order components");
    std::vector<cplx> re;
    for (const cplx& v : z.values) re.emplace_back(v.real(), 0.0);
    const SymbolFactors s = symbol_factors(mesh, omega);
    ComplexFactorization f;
    f.fractional_part = hex_ft(mesh, Order::make(re), omega);
    double damp = 0, rot = 0;
    for (int k = 0; k < 3; ++k) {
        if (s.Omega[k] == cplx(0.0)) continue;
        damp -= z.values[k].imag() * s.arg[k];
        rot += z.values[k].imag() * s.log_abs[k];
    }
    f.modulation = std::exp(damp);
    f.phase = std::polar(1.0, rot);
    return f;
}

BracketValue riesz_bracket(const Mesh3& mesh, const Order& alpha, const Vec2& omega, int N, const Vec2& center) {
    if (N < 1) throw Error("riesz_bracket needs N >= 1");
    if (alpha.size() != 3) throw Error("hex orders need three components");
    const auto a = alpha.real_values();
    const std::array<Vec2, 3> x{mesh.x1, mesh.x2, mesh.x3};
    std::vector<double> shell(std::size_t(N) + 1, 0.0);
    for (int k1 = -N; k1 <= N; ++k1) {
        for (int k2 = -N; k2 <= N; ++k2) {
            const Vec2 w = omega + 2.0 * kPi * (center + Vec2(k1, k2));
            double term = 1.0;
            for (int j = 0; j < 3; ++j) term *= std::pow(std::abs(sinc(0.5 * w.dot(x[j]))), 2.0 * a[j]);
            shell[std::size_t(std::max(std::abs(k1), std::abs(k2)))] += term;
        }
    }
    BracketValue out;
    for (double s : shell) out.value += s;

    // shells decay like r^-p: lattice points close to a line <., x^j> = 0 keep one factor near 1
    const double total = a[0] + a[1] + a[2];
    const double amax = std::max({a[0], a[1], a[2]});
    const double p = std::min(2.0 * (total - amax), 2.0 * total - 1.0);
    if (!(p > 1.0) || N < 2) {
        out.tail_estimate = std::numeric_limits<double>::infinity();
        return out;
    }
    double A = 0;
    for (int r = std::max(1, N / 2); r <= N; ++r) A = std::max(A, shell[std::size_t(r)] * std::pow(double(r), p));
    out.tail_estimate = A * std::pow(double(N), 1.0 - p) / (p - 1.0);
    return out;
}

double epstein_zeta(double x1, double tau, double a, int box) {
    const double s = 2.0 * a;
    const double near = 64.0;
    const double Nd = box;
    // sum_{m = A}^{N} (m + t)^-s for m + t >= near, by Euler-Maclaurin
    auto tail = [&](double A, double t) {
        if (A > Nd) return 0.0;
        const double u0 = A + t, u1 = Nd + t;
        const double integral = (std::pow(u0, 1.0 - s) - std::pow(u1, 1.0 - s)) / (s - 1.0);
        const double ends = 0.5 * (std::pow(u0, -s) + std::pow(u1, -s));
        const double deriv = (-s * std::pow(u1, -s - 1.0) + s * std::pow(u0, -s - 1.0)) / 12.0;
        return integral + ends + deriv;
    };
    double total = 0;
    for (int m2 = -box; m2 <= box; ++m2) {
        const double t = tau * m2;
        const double lo = std::max(-Nd, std::ceil(-t - near));
        const double hi = std::min(Nd, std::floor(-t + near));
        for (double m1 = lo; m1 <= hi; m1 += 1.0) {
            if (m1 == 0.0 && m2 == 0) continue;
            total += std::pow(std::abs(m1 + t), -s);
        }
        total += tail(hi + 1.0, t);
        total += tail(-lo + 1.0, -t);
    }
    return total * std::pow(std::abs(x1), -s);
}

RieszBounds riesz_bounds(const Mesh3& mesh, const Order& alpha, int scan_box, int epstein_box) {
    if (alpha.size() != 3) throw Error("hex orders need three components");
    const auto a = alpha.real_values();
    const std::array<Vec2, 3> x{mesh.x1, mesh.x2, mesh.x3};
    RieszBounds out;
    RieszKnotCheck& chk = out.check;
    for (int j = 0; j < 3; ++j) chk.theta[j] = std::abs(x[j].x()) + std::abs(x[j].y());
    chk.condition_i_ok = chk.theta[0] < 2 && chk.theta[1] < 2;
    for (int j = 0; j < 2; ++j) {
        if (x[j].x() == 0.0) throw PreconditionViolated("x1^j != 0", "knot x^j has zero first coordinate");
        chk.ratios[j] = x[j].y() / x[j].x();
    }
    chk.condition_ii_note =
        "irrationality of tau_j cannot be decided in floating point; the bracket sandwich is the operational check";

    if (!chk.condition_i_ok) throw PreconditionViolated("theta_j < 2", "knot condition |x1^j| + |x2^j| < 2 fails");
    if (!(a[0] > 1 && a[1] > 1)) throw PreconditionViolated("alpha_j > 1", "alpha_1 and alpha_2 must exceed 1");
    if (!(a[2] > 0.5)) throw PreconditionViolated("alpha_3 > 1/2", "alpha_3 must exceed 1/2");
    if (!(a[0] + a[1] + a[2] > 1)) throw PreconditionViolated("|alpha| > 1", "|alpha| must exceed 1");

    out.c = 1.0;
    for (int j = 0; j < 3; ++j) out.c *= std::pow(2.0 / (kPi * chk.theta[j]), 2.0 * a[j]);

    // indices whose linear form <omega + 2 pi k, x^j> can vanish on [0, pi]^2
    int k0a = 0, k0b = 0;
    std::vector<std::array<int, 2>> flagged;
    for (int k1 = -scan_box; k1 <= scan_box; ++k1) {
        for (int k2 = -scan_box; k2 <= scan_box; ++k2) {
            bool hit = false;
            for (int j = 0; j < 2 && !hit; ++j) {
                const double base = 2.0 * kPi * (k1 * x[j].x() + k2 * x[j].y());
                double lo = 1e300, hi = -1e300;
                for (double w1 : {0.0, kPi})
                    for (double w2 : {0.0, kPi}) {
                        const double v = base + w1 * x[j].x() + w2 * x[j].y();
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                hit = lo <= 0.0 && hi >= 0.0;
            }
            if (hit) {
                flagged.push_back({k1, k2});
                k0a = std::max(k0a, std::abs(k1) + 1);
                k0b = std::max(k0b, std::abs(k2) + 1);
            }
        }
    }
    out.k0 = {k0a, k0b};
    int excluded = 0;
    for (int k1 = -scan_box; k1 <= scan_box; ++k1)
        for (int k2 = -scan_box; k2 <= scan_box; ++k2)
            if (std::abs(k1) < k0a || std::abs(k2) < k0b) ++excluded;
    out.excluded_count = excluded;

    for (int j = 0; j < 2; ++j) out.epstein[j] = epstein_zeta(x[j].x(), chk.ratios[j], a[j], epstein_box);
    out.riemann_zeta = std::riemann_zeta(2.0 * a[2]);
    const double total = a[0] + a[1] + a[2];
    out.C = excluded + std::pow(2.0 / kPi, 2.0 * total) * out.epstein[0] * out.epstein[1] * out.riemann_zeta;
    out.upper_bound_note =
        "Q_j(m) = (x1^j)^2 |m1 + tau_j m2|^2 is rank one, so the lattice sums grow with the box; C is the value "
        "of the bound expression with the Epstein sums truncated at ||m||_inf <= " +
        std::to_string(epstein_box) + " and Z^2 \\ K counted inside ||k||_inf <= " + std::to_string(scan_box);
    return out;
}

DecayFit decay_check(const Mesh3& mesh, const Order& alpha, const Vec2& ray_direction,
                     const std::vector<double>& radii, int window_samples) {
    if (radii.size() < 2) throw Error("decay_check needs at least two radii");
    Vec2 d = ray_direction.normalized();
    // keep the ray away from the directions where one sinc factor never decays
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double m = std::min({std::abs(d.dot(mesh.x1.normalized())), std::abs(d.dot(mesh.x2.normalized())),
                                   std::abs(d.dot(mesh.x3.normalized()))});
        if (m > 0.05) break;
        const double c = std::cos(0.05), s = std::sin(0.05);
        d = Vec2(c * d.x() - s * d.y(), s * d.x() + c * d.y());
    }
    const double total = alpha.total.real();
    const Mat2 Minv_T = mesh.M().transpose().inverse();
    DecayFit fit;
    fit.direction = d;
    std::vector<double> lx, ly;
    for (double r : radii) {
        const Vec2 theta0 = mesh.M().transpose() * (r * d);
        double sup = 0;
        for (int i = 0; i < window_samples; ++i)
            for (int j = 0; j < window_samples; ++j) {
                const Vec2 theta = theta0 + 2.0 * kPi * Vec2(double(i) / window_samples, double(j) / window_samples);
                const Vec2 w = Minv_T * theta;
                const double v = std::abs(hex_ft(mesh, alpha, w));
                sup = std::max(sup, v);
                fit.envelope_max = std::max(fit.envelope_max, v * std::pow(w.norm(), total));
            }
        fit.radii.push_back(r);
        fit.sup_values.push_back(sup);
        lx.push_back(std::log(r));
        ly.push_back(std::log(sup));
    }
    const double n = double(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

}  // namespace hexspline
