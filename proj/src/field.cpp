#include "hexspline/field.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace hexspline {

GridAxis parse_axis(const std::string& spec) {
    GridAxis a;
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw Error("grid axis must look like min:max:count, got '" + spec + "'");
    try {
        std::size_t used = 0;
        a.min = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw Error("bad number");
        a.max = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw Error("bad number");
        a.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw Error("bad number");
    } catch (const std::exception&) {
        throw Error("grid axis must look like min:max:count, got '" + spec + "'");
    }
    if (a.count < 2) throw Error("grid axes need at least two samples");
    if (!(a.max > a.min)) throw Error("grid axis needs min < max");
    return a;
}

SampledField sample_field(const GridAxis& xs, const GridAxis& ys, bool complex,
                          const std::function<cplx(const Vec2&)>& f, int threads) {
    SampledField out;
    out.xs = xs;
    out.ys = ys;
    out.complex = complex;
    const std::size_t n = std::size_t(xs.count) * std::size_t(ys.count);
    out.re.assign(n, 0.0);
    if (complex) out.im.assign(n, 0.0);

    threads = std::max(1, std::min(threads, ys.count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    auto work = [&](int tid) {
        try {
            for (int j = tid; j < ys.count; j += threads) {
                for (int i = 0; i < xs.count; ++i) {
                    const cplx v = f(Vec2(xs.at(i), ys.at(j)));
                    const std::size_t idx = std::size_t(j) * std::size_t(xs.count) + std::size_t(i);
                    out.re[idx] = v.real();
                    if (complex) out.im[idx] = v.imag();
                }
            }
        } catch (...) {
            errors[std::size_t(tid)] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

int threads_from_env(int fallback) {
    const char* env = std::getenv("HEXSPLINE_THREADS");
    if (!env || !*env) return fallback;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw Error("HEXSPLINE_THREADS must be a positive integer");
    return int(v);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const SampledField& f) {
    std::string s = f.complex ? "x,y,re,im\n" : "x,y,value\n";
    for (int j = 0; j < f.ys.count; ++j) {
        for (int i = 0; i < f.xs.count; ++i) {
            const std::size_t idx = std::size_t(j) * std::size_t(f.xs.count) + std::size_t(i);
            s += format_number(f.xs.at(i));
            s += ',';
            s += format_number(f.ys.at(j));
            s += ',';
            s += format_number(f.re[idx]);
            if (f.complex) {
                s += ',';
                s += format_number(f.im[idx]);
            }
            s += '\n';
        }
    }
    return s;
}

namespace {

nlohmann::ordered_json number_array(const std::vector<double>& v) {
    auto a = nlohmann::ordered_json::array();
    for (double x : v) {
        if (std::isfinite(x))
            a.push_back(x);
        else
            a.push_back(format_number(x));
    }
    return a;
}

std::vector<double> read_array(const nlohmann::ordered_json& a) {
    std::vector<double> v;
    for (const auto& x : a) {
        if (x.is_string())
            v.push_back(std::stod(x.get<std::string>()));
        else
            v.push_back(x.get<double>());
    }
    return v;
}

}  // namespace

std::string to_json(const SampledField& f) {
    nlohmann::ordered_json j;
    j["meta"] = f.meta;
    j["grid"] = {{"xmin", f.xs.min}, {"xmax", f.xs.max}, {"nx", f.xs.count},
                 {"ymin", f.ys.min}, {"ymax", f.ys.max}, {"ny", f.ys.count}};
    j["layout"] = "row-major, row index follows y";
    if (f.complex) {
        j["re"] = number_array(f.re);
        j["im"] = number_array(f.im);
    } else {
        j["values"] = number_array(f.re);
    }
    return j.dump(1) + "\n";
}

SampledField parse_csv(const std::string& text) {
    SampledField f;
    std::stringstream ss(text);
    std::string line;
    std::getline(ss, line);
    f.complex = line == "x,y,re,im";
    if (!f.complex && line != "x,y,value") throw Error("unrecognized CSV header");
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        f.re.push_back(std::stod(cells.at(2)));
        if (f.complex) f.im.push_back(std::stod(cells.at(3)));
    }
    return f;
}

SampledField parse_json(const std::string& text) {
    const auto j = nlohmann::ordered_json::parse(text);
    SampledField f;
    f.meta = j.at("meta");
    const auto& g = j.at("grid");
    f.xs = {g.at("xmin").get<double>(), g.at("xmax").get<double>(), g.at("nx").get<int>()};
    f.ys = {g.at("ymin").get<double>(), g.at("ymax").get<double>(), g.at("ny").get<int>()};
    f.complex = j.contains("re");
    if (f.complex) {
        f.re = read_array(j.at("re"));
        f.im = read_array(j.at("im"));
    } else {
        f.re = read_array(j.at("values"));
    }
    return f;
}

}  // namespace hexspline
