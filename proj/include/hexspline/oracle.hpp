#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hexspline/geometry.hpp"

namespace hexspline {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    // relative floor so that large integrals are not held to an unreachable absolute target
    double rel_tol = 1e-13;
    int max_subdivisions = 2000;
    std::vector<double> split_points;
};

// Adaptive Gauss-Kronrod (GSL QAGS) over [lo, hi], split at spec.split_points.
double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec = {});

double F_quadrature(int n, int m, int l, double x, double a, double b, const QuadratureSpec& spec = {});

// One-dimensional integral form of the cone spline on a canonical 3-directional mesh.
double cone_quadrature(const Mesh3& mesh, const std::array<double, 3>& alpha, const Vec2& x,
                       const QuadratureSpec& spec = {});

// Cone spline from the inductive definition: indicator on the first two knots, then one
// directional integral per additional knot.
double cone_inductive(const std::vector<Vec2>& knots, const Vec2& x, const QuadratureSpec& spec = {});

}  // namespace hexspline
