#include "hexspline/special.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "hexspline/errors.hpp"

namespace hexspline {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 0.5 from the Lanczos sum.
cplx lanczos_log_gamma(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double nearest(double x) { return std::nearbyint(x); }

cplx sin_pi(cplx z) {
    // sin(pi z) with the real part reduced modulo 2 to keep the argument small
    const double r = z.real() - 2.0 * std::floor(z.real() / 2.0);
    return std::sin(kPi * cplx(r, z.imag()));
}

cplx pow_principal(cplx w, cplx p) {
    if (p == cplx(0.0)) return 1.0;
    if (w == cplx(0.0)) return p.real() > 0 ? cplx(0.0) : cplx(kInf);
    return std::exp(p * std::log(w));
}

// sum_k (a)_k (b)_k / ((c)_k k!) w^k for |w| < 1
cplx hyp_series(cplx a, cplx b, cplx c, cplx w, const TruncationPolicy& policy) {
    cplx term = 1.0;
    cplx sum = 1.0;
    int quiet = 0;
    for (int k = 0; k < policy.max_terms; ++k) {
        term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * w;
        sum += term;
        if (term == cplx(0.0)) return sum;
        if (std::abs(term) <= policy.rel_tol * std::abs(sum) * 0.1) {
            if (++quiet >= 2) return sum;
        } else {
            quiet = 0;
        }
    }
    throw NoConvergence("2F1 series did not reach tolerance within " +
                        std::to_string(policy.max_terms) + " terms");
}

// Polynomial case: a = -n.
cplx terminating_2f1(int n, cplx b, cplx c, double z) {
    cplx term = 1.0;
    cplx sum = 1.0;
    for (int k = 0; k < n; ++k) {
        term *= (double(k - n)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * z;
        sum += term;
    }
    return sum;
}

// 2F1 / Gamma(c) for z < -1 when b - a is not an integer.
cplx connection_generic(cplx a, cplx b, cplx c, double z, const TruncationPolicy& policy) {
    const double mz = -z;
    const cplx t1 = gamma(b - a) * recip_gamma(b) * recip_gamma(c - a) * pow_principal(mz, -a) *
                    hyp_series(a, a - c + 1.0, a - b + 1.0, 1.0 / z, policy);
    const cplx t2 = gamma(a - b) * recip_gamma(a) * recip_gamma(c - b) * pow_principal(mz, -b) *
                    hyp_series(b, b - c + 1.0, b - a + 1.0, 1.0 / z, policy);
    return t1 + t2;
}

// 2F1 / Gamma(c) for z < -1 and b = a + m, m a nonnegative integer (logarithmic case).
cplx connection_degenerate(cplx a, int m, cplx c, double z, const TruncationPolicy& policy) {
    const double mz = -z;
    const double logmz = std::log(mz);
    const cplx lead = pow_principal(mz, -a);

    cplx s1 = 0.0;
    if (m > 0) {
        cplx poch = 1.0;
        double zk = 1.0;
        for (int k = 0; k < m; ++k) {
            s1 += poch * factorial(m - k - 1) / factorial(k) * recip_gamma(c - a - double(k)) * zk;
            poch *= a + double(k);
            zk /= z;
        }
        s1 *= lead * recip_gamma(a + double(m));
    }

    // g = 1/Gamma(x) and h = psi(x)/Gamma(x) at x = c - a - m - k, stepped downward via
    // g(x-1) = (x-1) g(x), h(x-1) = (x-1) h(x) - g(x); both stay finite through the poles.
    cplx x = c - a - double(m);
    cplx g = recip_gamma(x);
    cplx h;
    if (is_nonpositive_integer(x)) {
        const int j = int(-nearest(x.real()));
        h = ((j + 1) % 2 == 0 ? 1.0 : -1.0) * factorial(j);
    } else {
        h = digamma(x) * g;
    }
    double psi_1k = -kEulerGamma;  // psi(1 + k)
    double psi_1mk = -kEulerGamma;  // psi(1 + m + k)
    for (int j = 1; j <= m; ++j) psi_1mk += 1.0 / j;
    cplx psi_amk = digamma(a + double(m));

    cplx coef = 1.0 / factorial(m) * std::pow(1.0 / z, m);  // (a+m)_k (-1)^k z^{-k-m} / (k!(k+m)!)
    cplx s2 = 0.0;
    int quiet = 0;
    bool converged = false;
    for (int k = 0; k < policy.max_terms; ++k) {
        const cplx bracket = (logmz + psi_1mk + psi_1k - psi_amk) * g - h;
        const cplx term = coef * bracket;
        s2 += term;
        if (std::abs(term) <= policy.rel_tol * 0.1 * std::abs(s2) || coef == cplx(0.0)) {
            if (++quiet >= 2) {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
        coef *= (a + double(m + k)) / (double(k + 1) * double(k + m + 1)) * (-1.0 / z);
        const cplx xm1 = x - 1.0;
        const cplx g_next = xm1 * g;
        h = xm1 * h - g;
        g = g_next;
        x = xm1;
        psi_1k += 1.0 / (k + 1);
        psi_1mk += 1.0 / (k + m + 1);
        psi_amk += 1.0 / (a + double(m + k));
    }
    if (!converged) {
        throw NoConvergence("logarithmic 2F1 expansion did not reach tolerance within " +
                            std::to_string(policy.max_terms) + " terms");
    }
    s2 *= lead * recip_gamma(a);
    return s1 + s2;
}

}  // namespace

void TruncationPolicy::validate() const {
    if (!(rel_tol > 0)) throw Error("TruncationPolicy: rel_tol must be positive");
    if (max_terms < 1) throw Error("TruncationPolicy: max_terms must be at least 1");
}

bool near_integer(double x, double tol) { return std::abs(x - nearest(x)) <= tol * std::max(1.0, std::abs(x)); }

bool is_nonpositive_integer(cplx z, double tol) {
    return std::abs(z.imag()) <= tol && near_integer(z.real(), tol) && nearest(z.real()) <= 0;
}

bool is_positive_integer(cplx z, double tol) {
    return std::abs(z.imag()) <= tol && near_integer(z.real(), tol) && nearest(z.real()) >= 1;
}

cplx truncated_power(double t, cplx p) {
    if (t < 0) return 0.0;
    if (t == 0) {
        if (p == cplx(0.0)) return 1.0;
        if (p.real() > 0) return 0.0;
        return p.real() < 0 ? cplx(kInf) : cplx(std::nan(""));
    }
    if (p == cplx(0.0)) return 1.0;
    if (p.imag() == 0) return std::pow(t, p.real());
    return std::exp(p * std::log(t));
}

double truncated_power(double t, double p) {
    if (t < 0) return 0.0;
    if (t == 0) {
        if (p == 0) return 1.0;
        return p > 0 ? 0.0 : kInf;
    }
    return p == 0 ? 1.0 : std::pow(t, p);
}

cplx gen_binomial(cplx a, int k) {
    if (k < 0) return 0.0;
    if (std::abs(a.imag()) <= 1e-12 && near_integer(a.real()) && nearest(a.real()) >= 0 &&
        nearest(a.real()) < k) {
        return 0.0;
    }
    cplx r = 1.0;
    for (int j = 0; j < k; ++j) r *= (a - double(j)) / double(j + 1);
    return r;
}

double gen_binomial(double a, int k) { return gen_binomial(cplx(a), k).real(); }

cplx gamma(cplx z) {
    if (is_nonpositive_integer(z, 0.0)) return cplx(kInf);
    if (z.real() < 0.5) return kPi / (sin_pi(z) * gamma(1.0 - z));
    return std::exp(lanczos_log_gamma(z));
}

double gamma(double x) {
    if (x <= 0 && x == nearest(x)) return kInf;
    if (x < 0.5) return kPi / (std::sin(kPi * (x - 2.0 * std::floor(x / 2.0))) * gamma(1.0 - x));
    return std::exp(lanczos_log_gamma(cplx(x)).real());
}

cplx recip_gamma(cplx z) {
    if (is_nonpositive_integer(z, 0.0)) return 0.0;
    if (z.real() < 0.5) return sin_pi(z) * gamma(1.0 - z) / kPi;
    return std::exp(-lanczos_log_gamma(z));
}

double recip_gamma(double x) {
    if (x <= 0 && x == nearest(x)) return 0.0;
    if (x < 0.5) return std::sin(kPi * (x - 2.0 * std::floor(x / 2.0))) * gamma(1.0 - x) / kPi;
    return std::exp(-lanczos_log_gamma(cplx(x)).real());
}

cplx digamma(cplx z) {
    if (is_nonpositive_integer(z, 0.0)) return cplx(std::nan(""));
    if (z.real() < 0.5) {
        // psi(1 - z) - psi(z) = pi cot(pi z)
        const cplx s = sin_pi(z);
        const cplx c = std::cos(kPi * cplx(z.real() - 2.0 * std::floor(z.real() / 2.0), z.imag()));
        return digamma(1.0 - z) - kPi * c / s;
    }
    cplx acc = 0.0;
    while (std::abs(z) < 12.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    // Bernoulli tail: B2/2, B4/4, ..., B14/14
    const cplx series =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 -
        inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
    return acc + std::log(z) - 0.5 * inv - series;
}

double digamma(double x) { return digamma(cplx(x)).real(); }

double factorial(int n) {
    static const auto table = [] {
        std::array<double, 21> t{};
        std::uint64_t f = 1;
        t[0] = 1.0;
        for (int i = 1; i <= 20; ++i) {
            f *= std::uint64_t(i);
            t[i] = double(f);
        }
        return t;
    }();
    if (n < 0) return kInf;
    if (n <= 20) return table[n];
    return std::tgamma(double(n) + 1.0);
}

cplx gauss_2f1(cplx a, cplx b, cplx c, double z, const TruncationPolicy& policy) {
    policy.validate();
    if (!(z < 1.0)) throw Error("gauss_2f1: argument must be below 1");
    if (z == 0.0) return 1.0;

    // polynomial fast path
    const bool a_term = is_nonpositive_integer(a);
    const bool b_term = is_nonpositive_integer(b);
    if (a_term || b_term) {
        const int na = a_term ? int(-nearest(a.real())) : std::numeric_limits<int>::max();
        const int nb = b_term ? int(-nearest(b.real())) : std::numeric_limits<int>::max();
        const int n = std::min(na, nb);
        const cplx other = na <= nb ? b : a;
        if (is_nonpositive_integer(c) && int(-nearest(c.real())) < n) {
            throw PoleAtC("2F1: c is a nonpositive integer reached before the series terminates");
        }
        return terminating_2f1(n, other, c, z);
    }
    if (is_nonpositive_integer(c)) throw PoleAtC("2F1: c is a nonpositive integer");

    // converges for 0 < z < 1, slowly near 1 (NoConvergence past max_terms)
    if (z > 0.0) return hyp_series(a, b, c, z, policy);
    if (z >= -3.0) {
        // Pfaff: maps z into [0, 3/4]
        const double w = z / (z - 1.0);
        return pow_principal(1.0 - z, -a) * hyp_series(a, c - b, c, w, policy);
    }

    const cplx d = b - a;
    const bool degenerate = std::abs(d.imag()) <= 1e-9 && std::abs(d.real() - nearest(d.real())) <= 1e-9;
    cplx scaled;
    if (!degenerate) {
        scaled = connection_generic(a, b, c, z, policy);
    } else {
        const int m = int(nearest(d.real()));
        scaled = m >= 0 ? connection_degenerate(a, m, c, z, policy)
                        : connection_degenerate(b, -m, c, z, policy);
    }
    return gamma(c) * scaled;
}

double gauss_2f1(double a, double b, double c, double z, const TruncationPolicy& policy) {
    return gauss_2f1(cplx(a), cplx(b), cplx(c), z, policy).real();
}

}  // namespace hexspline
