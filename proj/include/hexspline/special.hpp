#pragma once

#include <complex>

namespace hexspline {

using cplx = std::complex<double>;

struct TruncationPolicy {
    double rel_tol = 1e-13;
    int max_terms = 10000;

    void validate() const;
};

// t_+^p with the conventions 0^0 = 1, 0^p = 0 for Re p > 0 and 0^p = inf for Re p < 0.
cplx truncated_power(double t, cplx p);
double truncated_power(double t, double p);

cplx gen_binomial(cplx a, int k);
double gen_binomial(double a, int k);

cplx gamma(cplx z);
double gamma(double x);
cplx recip_gamma(cplx z);
double recip_gamma(double x);
cplx digamma(cplx z);
double digamma(double x);

// n! exactly for n <= 20, Gamma(n+1) beyond.
double factorial(int n);

// Gauss hypergeometric 2F1(a, b; c; z) for real z < 1 (the library only needs z <= 0).
cplx gauss_2f1(cplx a, cplx b, cplx c, double z, const TruncationPolicy& policy = {});
double gauss_2f1(double a, double b, double c, double z, const TruncationPolicy& policy = {});

bool near_integer(double x, double tol = 1e-12);
bool is_nonpositive_integer(cplx z, double tol = 1e-12);
bool is_positive_integer(cplx z, double tol = 1e-12);

}  // namespace hexspline
