#pragma once

#include <array>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "hexspline/cone.hpp"
#include "hexspline/geometry.hpp"

namespace hexspline {

// Dense coefficient table over [k1min, k1max] x [k2min, k2max]. Coefficient k multiplies the
// translate by M(k - shift*(1,1)).
struct CoeffTable {
    int k1min = 0, k1max = -1, k2min = 0, k2max = -1;
    std::vector<double> data;
    int radius = 0;
    double tail_bound = 0;
    Order order;
    double shift = 0;
    std::string shift_convention = "Mk";
    // multiplier turning stored entries into the normalized filter (refinement masks only)
    double scale = 1;

    double at(int k1, int k2) const;
    double sum() const;
    double abs_sum() const;
    std::vector<std::tuple<int, int, double>> entries() const;
};

CoeffTable hex_coeffs_integer(const std::array<int, 3>& n);

// radius < 0 picks the radius from policy.rel_tol, capped at kMaxCoeffRadius.
CoeffTable hex_coeffs_fractional(const Order& alpha, const TruncationPolicy& policy = {}, int radius = -1);
CoeffTable refinement_mask(const Order& alpha, const TruncationPolicy& policy = {}, int radius = -1);

inline constexpr int kMaxCoeffRadius = 256;

// Estimated l1 mass of the coefficients outside max(k1, k2) <= radius.
double coefficient_tail(const std::array<double, 3>& alpha, int radius, bool mask);

struct HexValue {
    double value = 0;
    double tail_bound = 0;
};

class HexSpline {
public:
    static HexSpline integer(const Mesh3& mesh, const std::array<int, 3>& n);
    static HexSpline fractional(const Mesh3& mesh, const Order& alpha, int eval_radius,
                                const TruncationPolicy& policy = {});
    // integer tables for integer orders, fractional tables of the given radius otherwise
    static HexSpline make(const Mesh3& mesh, const Order& alpha, int eval_radius,
                          const TruncationPolicy& policy = {});

    const Mesh3& mesh() const { return mesh_; }
    const Order& order() const { return order_; }
    const CoeffTable& coeffs() const { return coeffs_; }
    int eval_radius() const { return coeffs_.radius; }
    const ThreeDirCone& cone() const { return *cone_; }
    const TruncationPolicy& policy() const { return policy_; }

private:
    HexSpline(const Mesh3& mesh, const Order& order, CoeffTable coeffs, const TruncationPolicy& policy);

    Mesh3 mesh_;
    Order order_;
    CoeffTable coeffs_;
    TruncationPolicy policy_;
    std::shared_ptr<const ThreeDirCone> cone_;
};

double hex_eval(const HexSpline& hs, const Vec2& x);
HexValue hex_eval_detailed(const HexSpline& hs, const Vec2& x);

// Hex spline on an arbitrary 3-directional mesh through the knot-transformation rule.
double hex_eval_any_mesh(const Mesh3& mesh, const Order& alpha, int eval_radius, const Vec2& x,
                         const TruncationPolicy& policy = {});

// Table radius that makes hex_eval exact on every point whose dual coordinates are at most r.
int table_radius_for(double dual_coordinate_bound, double alpha3);

double box_from_difference(const Mesh3& mesh, const std::array<int, 3>& n, const Vec2& x);

double two_scale_residual(const HexSpline& hs, const Vec2& x);
double two_scale_residual(const HexSpline& hs, const CoeffTable& mask, const Vec2& x);

}  // namespace hexspline
