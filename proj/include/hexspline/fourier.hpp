#pragma once

#include <array>
#include <string>
#include <vector>

#include "hexspline/geometry.hpp"

namespace hexspline {

// (1 - e^{-it}) / (it), with a Taylor expansion near t = 0.
cplx sinc_factor(double t);
// w^z = exp(z log w) with arg w in (-pi, pi]; 0^z = 0 for Re z > 0, w^0 = 1.
cplx principal_pow(cplx w, cplx z);

struct SymbolFactors {
    Vec2 omega;
    std::array<double, 3> theta{};   // <omega, x^k>
    std::array<cplx, 3> Omega{};     // per-knot box factors of the hex knot set {x1, x2, -x3}
    std::array<double, 3> arg{};     // arg Omega_k
    std::array<double, 3> log_abs{}; // log |Omega_k|
};

SymbolFactors symbol_factors(const Mesh3& mesh, const Vec2& omega);

cplx hex_ft(const Mesh3& mesh, const Order& z, const Vec2& omega);
// Same product with the x3 factor taken as e^{i z3 t3} ((1 - e^{-i t3}) / (i t3))^{z3}, the branch
// that matches the time-domain coefficient expansion.
cplx hex_ft_time_branch(const Mesh3& mesh, const Order& z, const Vec2& omega);

// Pointwise cone-spline transform; the delta-supported terms on <omega, x^k> = 0 are excluded.
cplx cone_ft(const Mesh3& mesh, const Order& z, const Vec2& omega);
cplx cone_ft(const KnotBasis& basis, const Order& z, const Eigen::VectorXd& omega);

struct ComplexFactorization {
    cplx fractional_part;
    double modulation = 1;
    cplx phase{1.0};
};

ComplexFactorization complex_factorization(const Mesh3& mesh, const Order& z, const Vec2& omega);

struct BracketValue {
    double value = 0;
    double tail_estimate = 0;
};

// Sum over k in center + [-N, N]^2 of |B^(omega + 2 pi k)|^2.
BracketValue riesz_bracket(const Mesh3& mesh, const Order& alpha, const Vec2& omega, int N,
                          const Vec2& center = Vec2::Zero());

struct RieszKnotCheck {
    std::array<double, 3> theta{};
    std::array<double, 2> ratios{};
    bool condition_i_ok = false;
    std::string condition_ii_note;
};

struct RieszBounds {
    double c = 0;
    double C = 0;
    RieszKnotCheck check;
    int excluded_count = 0;         // card of Z^2 \ K inside the scan box
    std::array<int, 2> k0{};        // K = {k : |k_i| >= k0_i}
    std::array<double, 2> epstein{};
    double riemann_zeta = 0;
    std::string upper_bound_note;
};

RieszBounds riesz_bounds(const Mesh3& mesh, const Order& alpha, int scan_box = 8, int epstein_box = 10000);

// Truncated Epstein sum over 0 < ||m||_inf <= box of |x1|^{-2a} |m1 + tau m2|^{-2a}.
double epstein_zeta(double x1, double tau, double a, int box);

struct DecayFit {
    double exponent = 0;
    double envelope_max = 0;  // max |B^(omega)| ||omega||^{|alpha|} over the samples
    Vec2 direction;
    std::vector<double> radii;
    std::vector<double> sup_values;
};

DecayFit decay_check(const Mesh3& mesh, const Order& alpha, const Vec2& ray_direction,
                     const std::vector<double>& radii, int window_samples = 64);

}  // namespace hexspline
