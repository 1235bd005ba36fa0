#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_psi.h>

#include <cmath>
#include <random>

#include "doctest.h"
#include "hexspline/errors.hpp"
#include "hexspline/special.hpp"

using namespace hexspline;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

double qags(double (*fn)(double, void*), void* params) {
    gsl_function f;
    f.function = fn;
    f.params = params;
    gsl_set_error_handler_off();
    gsl_integration_workspace* w = gsl_integration_workspace_alloc(2000);
    double result = 0, err = 0;
    gsl_integration_qags(&f, 0.0, 1.0, 1e-15, 1e-14, 2000, w, &result, &err);
    gsl_integration_workspace_free(w);
    return result;
}

// Euler integral representation, valid for c > b > 0. Each half absorbs its endpoint power
// through t = s^(1/b) / 2 near 0 and 1 - t = s^(1/(c-b)) / 2 near 1.
double euler_2f1(double a, double b, double c, double z) {
    struct P {
        double a, b, c, z;
    } p{a, b, c, z};
    auto lower = [](double s, void* v) {
        auto* q = static_cast<P*>(v);
        if (s <= 0) return 0.0;
        const double t = 0.5 * std::pow(s, 1.0 / q->b);
        return std::pow(0.5, q->b) / q->b * std::pow(1 - t, q->c - q->b - 1) * std::pow(1 - q->z * t, -q->a);
    };
    auto upper = [](double s, void* v) {
        auto* q = static_cast<P*>(v);
        const double e = q->c - q->b;
        if (s <= 0) return 0.0;
        const double d = 0.5 * std::pow(s, 1.0 / e);
        return std::pow(0.5, e) / e * std::pow(1 - d, q->b - 1) * std::pow(1 - q->z * (1 - d), -q->a);
    };
    const double integral = qags(lower, &p) + qags(upper, &p);
    return integral * gsl_sf_gamma(c) / (gsl_sf_gamma(b) * gsl_sf_gamma(c - b));
}

struct Frozen2F1 {
    double a, b, c, z, value;
};

// reference values from mpmath.hyp2f1 at 25 digits
const Frozen2F1 kFrozen[] = {
    {0.5, 1.25, 2, -3, 0.61456331898137962286},
    {0.5, 1.25, 2, -30, 0.25619886737977523776},
    {-0.5, 1.5, 2.5, -50, 5.4068169135548094669},
    {-0.5, 1.5, 2.5, -3.5, 1.7389936503493144089},
    {0.3, 1.3, 1.7, -7, 0.58916200854193211284},
    {-0.5, 1.25, 1.5833333333333333, -10000.0, 87.104359939173948887},
    {0.25, 3.25, 1.25, -4, 0.50229827351562365358},
    {-0.4, 0.6, 0.9, -1000000.0, 200.84303023579318228},
    {1.5, 0.7, 3.2, -0.4, 0.89022236440652317993},
    {-0.5, 0.5, 1.5, -100000000.0, 5000.0005201743776893},
    {0.7, 2.2, 1.9, -12.5, 0.13946789660859820073},
    {-2.5, 1.5, 4, -200, 81664.944478238974726},
};

}  // namespace

TEST_CASE("truncated_power conventions") {
    CHECK(truncated_power(-2.0, cplx(3.0)) == cplx(0.0));
    CHECK(std::abs(truncated_power(2.0, cplx(0.5)) - std::sqrt(2.0)) < 1e-15);
    CHECK(truncated_power(0.0, cplx(0.0)) == cplx(1.0));
    CHECK(truncated_power(0.0, cplx(1.5)) == cplx(0.0));
    CHECK(truncated_power(0.0, 0.0) == 1.0);
    CHECK(std::isinf(truncated_power(0.0, -0.5)));
}

TEST_CASE("truncated_power exponent additivity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> t(0.01, 20.0), re(0.0, 4.0), im(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double x = t(rng);
        const cplx p(re(rng), im(rng)), q(re(rng), im(rng));
        const cplx lhs = truncated_power(x, p) * truncated_power(x, q);
        const cplx rhs = truncated_power(x, p + q);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
    }
}

TEST_CASE("gen_binomial values") {
    CHECK(gen_binomial(1.0, 2) == 0.0);
    CHECK(gen_binomial(3.0, 2) == 3.0);
    CHECK(gen_binomial(1.5, 3) == doctest::Approx(-0.0625).epsilon(1e-15));
    const double ratio = gsl_sf_gamma(2.5) / (gsl_sf_gamma(4.0) * gsl_sf_gamma(-0.5));
    CHECK(rel_err(gen_binomial(1.5, 3), ratio) < 1e-14);
    CHECK(gen_binomial(cplx(0.5, 1.0), 0) == cplx(1.0));
}

TEST_CASE("gen_binomial recurrence") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 40; ++i) {
        const cplx a(u(rng), u(rng));
        for (int k = 0; k < 50; ++k) {
            const cplx next = gen_binomial(a, k) * (a - double(k)) / double(k + 1);
            const cplx want = gen_binomial(a, k + 1);
            CHECK(std::abs(next - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("gamma and reciprocal gamma") {
    CHECK(recip_gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(recip_gamma(0.0) == 0.0);
    CHECK(recip_gamma(-3.0) == 0.0);
    CHECK(rel_err(recip_gamma(2.5), 0.752252778063675049264105935414) < 1e-14);
    CHECK(rel_err(hexspline::gamma(0.1), 9.5135076986687318363) < 1e-13);
    CHECK(rel_err(hexspline::gamma(-2.5), -0.94530872048294188123) < 1e-13);
    CHECK(rel_err(hexspline::gamma(7.3), 1271.4236336639092731) < 1e-13);
    const cplx g = gamma(cplx(0.5, 1.0));
    CHECK(std::abs(g - cplx(0.30069461726065581622, -0.42496787943312381261)) < 1e-14);
    CHECK(recip_gamma(cplx(-2.0, 0.0)) == cplx(0.0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-8.0, 12.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng);
        if (std::abs(x - std::nearbyint(x)) < 1e-3) continue;
        CHECK(std::abs(recip_gamma(x) - x * recip_gamma(x + 1.0)) <= 1e-12 * std::abs(recip_gamma(x)) + 1e-300);
        CHECK(rel_err(hexspline::gamma(x), gsl_sf_gamma(x)) < 1e-12 * std::max(1.0, std::abs(gsl_sf_gamma(x))));
    }
}

TEST_CASE("digamma") {
    CHECK(rel_err(digamma(-1.3), 2.8825405488661679494) < 1e-13);
    CHECK(rel_err(digamma(3.7), 1.1671535393615114409) < 1e-14);
    const cplx p = digamma(cplx(-0.5, 2.0));
    CHECK(std::abs(p - cplx(0.79983375817295367991, 2.0413736063180939716)) < 1e-13);
    for (double x = -4.75; x < 9.0; x += 0.37) {
        if (std::abs(x - std::nearbyint(x)) < 1e-6) continue;
        CHECK(std::abs(digamma(x) - gsl_sf_psi(x)) < 1e-12 * std::max(1.0, std::abs(gsl_sf_psi(x))));
    }
}

TEST_CASE("factorial exact range") {
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(5) == 120.0);
    CHECK(factorial(20) == 2432902008176640000.0);
    CHECK(rel_err(factorial(25), 1.5511210043330986e25) < 1e-13);
}

TEST_CASE("gauss_2f1 trivial and terminating") {
    CHECK(gauss_2f1(cplx(0.3), cplx(1.2), cplx(2.0), 0.0) == cplx(1.0));
    const double b = 1.7, c = 2.9, z = -4.2;
    CHECK(gauss_2f1(-1.0, b, c, z) == doctest::Approx(1 - b / c * z).epsilon(1e-15));
    // a = -n against an explicit n+1 term sum with exact rational inputs
    for (int n = 0; n <= 8; ++n) {
        const double bb = 0.75, cc = 2.5, zz = -6.0;
        double sum = 0, term = 1;
        for (int k = 0; k <= n; ++k) {
            sum += term;
            term *= (k - n) * (bb + k) / ((cc + k) * (k + 1)) * zz;
        }
        CHECK(std::abs(gauss_2f1(double(-n), bb, cc, zz) - sum) <= 1e-14 * std::abs(sum));
    }
    CHECK_THROWS_AS(gauss_2f1(cplx(-3.0), cplx(1.0), cplx(-1.0), -2.0), PoleAtC);
    CHECK_THROWS_AS(gauss_2f1(cplx(0.5), cplx(1.0), cplx(-1.0), -2.0), PoleAtC);
    CHECK_NOTHROW(gauss_2f1(cplx(-1.0), cplx(1.0), cplx(-2.0), -2.0));
}

TEST_CASE("gauss_2f1 against Euler integral") {
    CHECK(rel_err(gauss_2f1(0.5, 1.25, 2.0, -3.0), euler_2f1(0.5, 1.25, 2.0, -3.0)) < 1e-12);
    CHECK(rel_err(gauss_2f1(0.5, 1.25, 2.0, -3.0), 0.61456331898137962286) < 1e-13);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(-2.5, 2.5), ub(0.2, 3.0), ugap(0.2, 2.0), uz(-6.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double a = ua(rng), b = ub(rng), c = b + ugap(rng), z = -std::pow(10.0, uz(rng));
        CHECK(rel_err(gauss_2f1(a, b, c, z), euler_2f1(a, b, c, z)) < 1e-10);
    }
}

TEST_CASE("gauss_2f1 on positive arguments") {
    CHECK(rel_err(gauss_2f1(1.0, 1.0, 2.0, 0.5), -std::log(0.5) / 0.5) < 1e-14);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ua(-2.5, 2.5), ub(0.2, 3.0), ugap(0.2, 2.0), uz(0.05, 0.9);
    for (int i = 0; i < 50; ++i) {
        const double a = ua(rng), b = ub(rng), c = b + ugap(rng), z = uz(rng);
        CHECK(rel_err(gauss_2f1(a, b, c, z), euler_2f1(a, b, c, z)) < 1e-10);
    }
}

TEST_CASE("gauss_2f1 frozen high precision values") {
    for (const auto& f : kFrozen) {
        CAPTURE(f.a);
        CAPTURE(f.z);
        CHECK(rel_err(gauss_2f1(f.a, f.b, f.c, f.z), f.value) < 1e-12);
    }
}

TEST_CASE("gauss_2f1 honours the term budget") {
    TruncationPolicy tight;
    tight.max_terms = 3;
    CHECK_THROWS_AS(gauss_2f1(0.5, 1.25, 2.0, -2.5, tight), NoConvergence);
    TruncationPolicy bad;
    bad.rel_tol = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
}
