#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "hexspline/cone.hpp"
#include "hexspline/field.hpp"
#include "hexspline/fourier.hpp"
#include "hexspline/hex.hpp"
#include "hexspline/verify.hpp"
#include "json.hpp"

using namespace hexspline;
using json = nlohmann::ordered_json;

namespace {

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ArgumentError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ArgumentError("not a number: '" + s + "'");
    return v;
}

// "a", "bi", "a+bi", "a-bi"
cplx parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty()) throw ArgumentError("empty order component");
    if (s.back() != 'i') return parse_real(s);
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (split == std::string::npos) return {0.0, imag(s)};
    return {parse_real(s.substr(0, split)), imag(s.substr(split))};
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

Order parse_order(const std::string& s) {
    std::vector<cplx> v;
    for (const auto& c : split_commas(s)) v.push_back(parse_complex(c));
    try {
        return Order::make(v);
    } catch (const Error& e) {
        throw ArgumentError(e.what());
    }
}

struct MeshArgs {
    std::string mesh = "hex";
    std::string knots;

    Mesh3 resolve() const {
        if (!knots.empty()) {
            const auto p = split_commas(knots);
            if (p.size() != 4) throw ArgumentError("--knots needs x11,x12,x21,x22");
            try {
                return make_mesh3(Vec2(parse_real(p[0]), parse_real(p[1])), Vec2(parse_real(p[2]), parse_real(p[3])));
            } catch (const Error& e) {
                throw ArgumentError(e.what());
            }
        }
        if (mesh != "hex") throw ArgumentError("unknown mesh '" + mesh + "' (use hex or --knots)");
        return hexagonal_mesh();
    }

    json describe(const Mesh3& m) const {
        return {{"name", knots.empty() ? mesh : "custom"},
                {"x1", {m.x1.x(), m.x1.y()}},
                {"x2", {m.x2.x(), m.x2.y()}},
                {"x3", {m.x3.x(), m.x3.y()}}};
    }
};

json order_json(const Order& o) {
    json a = json::array();
    for (const cplx& v : o.values) a.push_back({v.real(), v.imag()});
    return a;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot open output file '" + path + "'");
    f << text;
}

struct EvalArgs {
    std::string kind = "hex";
    std::string order;
    MeshArgs mesh;
    std::string grid = "-2:2:101,-2:2:101";
    std::string format = "csv";
    double tol = TruncationPolicy{}.rel_tol;
    int max_terms = TruncationPolicy{}.max_terms;
    int radius = -1;
    int threads = 0;
    std::string output;
};

int automatic_radius(const Mesh3& mesh, const GridAxis& xs, const GridAxis& ys, double alpha3) {
    const Mat2 Minv = mesh.M().inverse();
    double bound = 0;
    for (double x : {xs.min, xs.max})
        for (double y : {ys.min, ys.max}) bound = std::max(bound, (Minv * Vec2(x, y)).maxCoeff());
    return table_radius_for(bound, alpha3);
}

void run_eval(const EvalArgs& a) {
    TruncationPolicy policy;
    policy.rel_tol = a.tol;
    policy.max_terms = a.max_terms;
    try {
        policy.validate();
    } catch (const Error& e) {
        throw ArgumentError(e.what());
    }
    const Order order = parse_order(a.order);
    if (order.size() != 3) throw ArgumentError("--order needs three components");
    const Mesh3 mesh = a.mesh.resolve();
    const auto axes = split_commas(a.grid);
    if (axes.size() != 2) throw ArgumentError("--grid needs xmin:xmax:nx,ymin:ymax:ny");
    GridAxis xs, ys;
    try {
        xs = parse_axis(axes[0]);
        ys = parse_axis(axes[1]);
    } catch (const Error& e) {
        throw ArgumentError(e.what());
    }
    if (a.format != "csv" && a.format != "json") throw ArgumentError("--format must be csv or json");
    const int threads = a.threads > 0 ? a.threads : threads_from_env(1);

    json meta;
    meta["kind"] = a.kind;
    meta["order"] = order_json(order);
    meta["mesh"] = a.mesh.describe(mesh);
    meta["policy"] = {{"rel_tol", policy.rel_tol}, {"max_terms", policy.max_terms}};

    std::function<cplx(const Vec2&)> f;
    bool complex = false;
    if (a.kind == "cone" || a.kind == "hex") {
        if (!order.is_real()) throw ArgumentError("complex orders are only available for cone-ft and hex-ft");
        const auto v = order.real_values();
        const std::array<double, 3> alpha{v[0], v[1], v[2]};
        if (a.kind == "cone") {
            const bool canonical = mesh.is_canonical();
            auto cone = std::make_shared<ThreeDirCone>(canonical ? mesh : mesh.canonical_image(), alpha, policy);
            const Mat2 A = mesh.T.inverse();
            f = [cone, canonical, A](const Vec2& x) -> cplx {
                if (canonical) return (*cone)(x);
                return transform_eval([&](const Vec2& y) { return (*cone)(y); }, A, x);
            };
        } else {
            const int radius = order.is_integer() ? 0 : (a.radius >= 0 ? a.radius : automatic_radius(mesh, xs, ys, alpha[2]));
            meta["radius"] = radius;
            const bool canonical = mesh.is_canonical();
            auto hs = std::make_shared<HexSpline>(HexSpline::make(canonical ? mesh : mesh.canonical_image(), order, radius, policy));
            meta["tail_bound"] = hs->coeffs().tail_bound;
            const Mat2 A = mesh.T.inverse();
            f = [hs, canonical, A](const Vec2& x) -> cplx {
                if (canonical) return hex_eval(*hs, x);
                return transform_eval([&](const Vec2& y) { return hex_eval(*hs, y); }, A, x);
            };
        }
    } else if (a.kind == "hex-ft") {
        complex = true;
        f = [mesh, order](const Vec2& w) { return hex_ft(mesh, order, w); };
    } else if (a.kind == "cone-ft") {
        complex = true;
        f = [mesh, order](const Vec2& w) {
            try {
                return cone_ft(mesh, order, w);
            } catch (const OnSingularSet&) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                return cplx(nan, nan);
            }
        };
    } else {
        throw ArgumentError("--kind must be one of cone, hex, cone-ft, hex-ft");
    }

    SampledField field = sample_field(xs, ys, complex, f, threads);
    field.meta = meta;
    write_output(a.output, a.format == "csv" ? to_csv(field) : to_json(field));
}

struct CoeffsArgs {
    std::string order;
    bool mask = false;
    double tol = TruncationPolicy{}.rel_tol;
    int max_terms = TruncationPolicy{}.max_terms;
    int radius = -1;
    std::string output;
};

void run_coeffs(const CoeffsArgs& a) {
    TruncationPolicy policy;
    policy.rel_tol = a.tol;
    policy.max_terms = a.max_terms;
    try {
        policy.validate();
    } catch (const Error& e) {
        throw ArgumentError(e.what());
    }
    const Order order = parse_order(a.order);
    if (order.size() != 3 || !order.is_real()) throw ArgumentError("--order needs three real components");
    CoeffTable t;
    if (a.mask) {
        t = refinement_mask(order, policy, a.radius);
    } else if (order.is_integer() && a.radius < 0) {
        const auto n = order.integer_values();
        t = hex_coeffs_integer({n[0], n[1], n[2]});
    } else {
        t = hex_coeffs_fractional(order, policy, a.radius);
    }
    if (a.radius < 0 && t.tail_bound > a.tol) {
        std::cerr << "warning: l1 mass beyond radius " << t.radius << " is bounded by " << t.tail_bound
                  << ", above --tol\n";
    }
    json j;
    j["kind"] = a.mask ? "mask" : "coefficients";
    j["order"] = order_json(order);
    j["shift_convention"] = t.shift_convention;
    j["shift"] = t.shift;
    j["radius"] = t.radius;
    j["tail_bound"] = t.tail_bound;
    if (a.mask) j["scale"] = t.scale;
    j["policy"] = {{"rel_tol", policy.rel_tol}, {"max_terms", policy.max_terms}};
    json entries = json::array();
    for (const auto& [k1, k2, c] : t.entries()) entries.push_back({k1, k2, c});
    j["entries"] = entries;
    write_output(a.output, j.dump(1) + "\n");
}

struct VerifyArgs {
    std::string suite;
    std::vector<std::string> orders;
    MeshArgs mesh;
    int max_order = 3;
    std::string output;
};

int run_verify(const VerifyArgs& a) {
    VerifyOptions opt;
    opt.mesh = a.mesh.resolve();
    opt.max_order = a.max_order;
    for (const auto& o : a.orders) opt.orders.push_back(parse_order(o));
    if (std::find(suite_names().begin(), suite_names().end(), a.suite) == suite_names().end())
        throw ArgumentError("unknown suite '" + a.suite + "'");
    const json report = run_suite(a.suite, opt);
    write_output(a.output, report.dump(1) + "\n");
    for (const auto& c : report["checks"]) {
        if (!c["pass"].get<bool>()) {
            std::cerr << "FAIL " << c["name"].get<std::string>() << ": max_error " << c["max_error"].dump()
                      << " tolerance " << c["tolerance"].dump() << " details " << c["details"].dump() << "\n";
        }
    }
    return report["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cone and hex splines of integer, fractional and complex order on 3-directional meshes"};
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "sample a spline or its Fourier transform on a grid");
    eval->add_option("--kind", ev.kind, "cone, hex, cone-ft or hex-ft")->capture_default_str();
    eval->add_option("--order", ev.order, "three components, each real or a+bi")->required();
    eval->add_option("--mesh", ev.mesh.mesh, "mesh shorthand")->capture_default_str();
    eval->add_option("--knots", ev.mesh.knots, "x11,x12,x21,x22");
    eval->add_option("--grid", ev.grid, "xmin:xmax:nx,ymin:ymax:ny")->capture_default_str();
    eval->add_option("--format", ev.format, "csv or json")->capture_default_str();
    eval->add_option("--tol", ev.tol, "series relative tolerance")->capture_default_str();
    eval->add_option("--max-terms", ev.max_terms, "series term budget")->capture_default_str();
    eval->add_option("--radius", ev.radius, "coefficient table radius for fractional hex splines (default: cover the grid)");
    eval->add_option("--threads", ev.threads, "worker threads (default: HEXSPLINE_THREADS or 1)");
    eval->add_option("--output,-o", ev.output, "output file (default stdout)");

    CoeffsArgs co;
    auto* coeffs = app.add_subcommand("coeffs", "dump a hex-spline coefficient table or refinement mask");
    coeffs->add_option("--order", co.order, "three real components")->required();
    coeffs->add_flag("--mask", co.mask, "refinement mask instead of cone coefficients");
    coeffs->add_option("--tol", co.tol, "drop table entries below this magnitude")->capture_default_str();
    coeffs->add_option("--max-terms", co.max_terms, "series term budget")->capture_default_str();
    coeffs->add_option("--radius", co.radius, "fixed table radius (default: from --tol)");
    coeffs->add_option("--output,-o", co.output, "output file (default stdout)");

    VerifyArgs ve;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", ve.suite, "oracle, recurrence, routes, partition, twoscale, riesz, complex, decay or all")
        ->required();
    verify->add_option("--order", ve.orders, "order to check (repeatable)");
    verify->add_option("--mesh", ve.mesh.mesh, "mesh shorthand")->capture_default_str();
    verify->add_option("--knots", ve.mesh.knots, "x11,x12,x21,x22");
    verify->add_option("--max-order", ve.max_order, "largest integer order in the oracle suite")->capture_default_str();
    verify->add_option("--output,-o", ve.output, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval->parsed()) run_eval(ev);
        if (coeffs->parsed()) run_coeffs(co);
        if (verify->parsed()) return run_verify(ve);
        return 0;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
