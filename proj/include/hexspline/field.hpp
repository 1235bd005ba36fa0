#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hexspline/geometry.hpp"
#include "json.hpp"

namespace hexspline {

struct GridAxis {
    double min = 0, max = 0;
    int count = 0;

    double at(int i) const { return count == 1 ? min : min + (max - min) * double(i) / double(count - 1); }
};

// "min:max:count"
GridAxis parse_axis(const std::string& spec);

struct SampledField {
    GridAxis xs, ys;
    bool complex = false;
    std::vector<double> re, im;  // row-major, row index follows y
    nlohmann::ordered_json meta;
};

// Rows are distributed over threads; each value depends only on its grid point.
SampledField sample_field(const GridAxis& xs, const GridAxis& ys, bool complex,
                          const std::function<cplx(const Vec2&)>& f, int threads);

int threads_from_env(int fallback = 1);

std::string format_number(double v);
std::string to_csv(const SampledField& f);
std::string to_json(const SampledField& f);

// Value arrays back from either encoding (grid and meta are not reconstructed from CSV).
SampledField parse_csv(const std::string& text);
SampledField parse_json(const std::string& text);

}  // namespace hexspline
