#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hexspline/geometry.hpp"
#include "json.hpp"

namespace hexspline {

struct CheckResult {
    std::string name;
    int cases = 0;
    double max_error = 0;
    double tolerance = 0;
    bool pass = false;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

// Closed forms for the hexagonal (n,n,n) family, kept separate from the general evaluators.
double condat_cone(int n, const Vec2& x);
double condat_coeff(int n, int k1, int k2);
// As printed, without the 2/sqrt(3) normalization of the cone formula.
double condat_box_printed(int n, const Vec2& x);

CheckResult check_lemma_oracle(int tuples = 200, std::uint64_t seed = 1);
CheckResult check_integer_cones(int max_order = 3, int points = 50, std::uint64_t seed = 2);
CheckResult check_fractional_oracle(std::uint64_t seed = 3);
CheckResult check_condat_cone(int n, int grid = 41);
CheckResult check_fractional_reduction(int points = 1000, std::uint64_t seed = 4);
CheckResult check_recurrence(const std::vector<std::array<double, 2>>& alphas, int points = 100,
                             std::uint64_t seed = 5);
CheckResult check_inductive(std::uint64_t seed = 6);
CheckResult check_condat_coeffs(int nmax = 3);
CheckResult check_fractional_coeffs_at_integers();
CheckResult check_condat_box(int n, int grid = 41);
CheckResult check_routes(const std::array<int, 3>& n, int grid = 21);
CheckResult check_partition(const std::array<int, 3>& n, int points = 50, std::uint64_t seed = 7);
CheckResult check_two_scale(const Order& alpha, int radius, int points, double tolerance, std::uint64_t seed = 8);
CheckResult check_riesz(const Mesh3& mesh, const Order& alpha, int N = 64, int grid = 33);
CheckResult check_complex_factorization(const Mesh3& mesh, int samples = 1000, std::uint64_t seed = 9);
CheckResult check_decay(const Mesh3& mesh, const Order& alpha);

struct VerifyOptions {
    Mesh3 mesh;
    std::vector<Order> orders;  // empty: suite defaults
    int max_order = 3;
};

nlohmann::ordered_json check_to_json(const CheckResult& r);

// {suite, cases, max_error, pass, checks: [...]}
nlohmann::ordered_json run_suite(const std::string& suite, const VerifyOptions& options);

const std::vector<std::string>& suite_names();

}  // namespace hexspline
