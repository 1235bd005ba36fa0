#include "hexspline/geometry.hpp"

#include <sstream>

namespace hexspline {

Order Order::make(std::vector<cplx> v) {
    Order o;
    for (const cplx& z : v) {
        if (!(z.real() > 0)) throw Error("order components must have positive real part");
        o.sigma.push_back(is_positive_integer(z) ? 1 : 0);
        o.total += z;
    }
    o.values = std::move(v);
    return o;
}

Order Order::real(const std::vector<double>& v) {
    return make(std::vector<cplx>(v.begin(), v.end()));
}

bool Order::is_real() const {
    for (const cplx& z : values)
        if (z.imag() != 0) return false;
    return true;
}

bool Order::is_integer() const {
    for (int s : sigma)
        if (!s) return false;
    return true;
}

std::vector<double> Order::real_values() const {
    if (!is_real()) throw UnsupportedOrder("complex order where a real order is required");
    std::vector<double> r;
    for (const cplx& z : values) r.push_back(z.real());
    return r;
}

std::vector<int> Order::integer_values() const {
    if (!is_integer()) throw UnsupportedOrder("non-integer order where an integer order is required");
    std::vector<int> r;
    for (const cplx& z : values) r.push_back(int(std::nearbyint(z.real())));
    return r;
}

std::string Order::to_string() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << values[i].real();
        if (values[i].imag() > 0) os << '+' << values[i].imag() << 'i';
        if (values[i].imag() < 0) os << values[i].imag() << 'i';
    }
    return os.str();
}

Eigen::MatrixXd KnotBasis::matrix() const {
    const int s = dim();
    Eigen::MatrixXd m(s, s);
    for (int k = 0; k < s; ++k) m.col(k) = knots[k];
    return m;
}

KnotBasis make_knot_basis(const std::vector<Eigen::VectorXd>& knots, const Order& orders) {
    const int s = int(knots.size());
    if (s == 0) throw SingularKnots("empty knot set");
    if (int(orders.size()) != s) throw Error("order length must equal the number of knots");
    Eigen::MatrixXd m(s, s);
    double norms = 1.0;
    for (int k = 0; k < s; ++k) {
        if (knots[k].size() != s) throw Error("knots must live in R^s with s the number of knots");
        m.col(k) = knots[k];
        norms *= knots[k].norm();
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const double det = lu.determinant();
    if (!(std::abs(det) > 1e-12 * norms)) throw SingularKnots("knots are linearly dependent");
    const Eigen::MatrixXd inv = lu.inverse();

    KnotBasis b;
    b.knots = knots;
    b.orders = orders;
    b.detM = std::abs(det);
    for (int k = 0; k < s; ++k) b.dual.push_back(inv.row(k).transpose());
    return b;
}

KnotBasis make_knot_basis(const std::vector<Vec2>& knots, const Order& orders) {
    std::vector<Eigen::VectorXd> v;
    for (const Vec2& k : knots) v.emplace_back(k);
    return make_knot_basis(v, orders);
}

Mat2 Mesh3::M() const {
    Mat2 m;
    m.col(0) = x1;
    m.col(1) = x2;
    return m;
}

bool Mesh3::is_canonical(double tol) const {
    return std::abs(x3.x() - 1.0) <= tol && std::abs(x3.y()) <= tol;
}

Mesh3 Mesh3::canonical_image() const {
    const Vec2 y1 = T * x1;
    return make_mesh3(y1, Vec2(1.0, 0.0) - y1);
}

Mesh3 make_mesh3(const Vec2& x1, const Vec2& x2) {
    const double det = x1.x() * x2.y() - x1.y() * x2.x();
    if (!(std::abs(det) > 1e-12 * x1.norm() * x2.norm())) throw SingularKnots("x1 and x2 are collinear");
    Mesh3 m;
    m.x1 = x1;
    m.x2 = x2;
    m.x3 = x1 + x2;
    const double n2 = m.x3.squaredNorm();
    m.T << m.x3.x(), m.x3.y(), -m.x3.y(), m.x3.x();
    m.T /= n2;
    m.detT = 1.0 / n2;
    return m;
}

Mesh3 hexagonal_mesh() {
    const double h = std::sqrt(3.0) / 2.0;
    return make_mesh3(Vec2(0.5, -h), Vec2(0.5, h));
}

}  // namespace hexspline
