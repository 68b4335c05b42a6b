#include "predistill/su2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace predistill {

using std::numbers::pi;

Mat2& Mat2::operator+=(const Mat2& o) {
    m00 += o.m00;
    m01 += o.m01;
    m10 += o.m10;
    m11 += o.m11;
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
    m00 -= o.m00;
    m01 -= o.m01;
    m10 -= o.m10;
    m11 -= o.m11;
    return *this;
}

Mat2& Mat2::operator*=(cplx s) {
    m00 *= s;
    m01 *= s;
    m10 *= s;
    m11 *= s;
    return *this;
}

Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
Mat2 operator*(cplx s, Mat2 a) { return a *= s; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Vec2 operator*(const Mat2& a, const Vec2& v) {
    return {a.m00 * v[0] + a.m01 * v[1], a.m10 * v[0] + a.m11 * v[1]};
}

cplx inner(const Vec2& a, const Vec2& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }

Mat2 outer(const Vec2& a, const Vec2& b) {
    return {a[0] * std::conj(b[0]), a[0] * std::conj(b[1]), a[1] * std::conj(b[0]),
            a[1] * std::conj(b[1])};
}

double max_abs(const Mat2& m) {
    double best = 0.0;
    for (const cplx& e : m.entries()) best = std::max(best, std::abs(e));
    return best;
}

double unitarity_defect(const Mat2& u) { return max_abs(u.adjoint() * u - Mat2::identity()); }

Unitary2 exp_i_pauli(double ax, double ay, double az) {
    const double r = std::sqrt(ax * ax + ay * ay + az * az);
    const double c = std::cos(r);
    // sin(r)/r, with its series near zero
    const double sinc = r < 1e-8 ? 1.0 - r * r / 6.0 : std::sin(r) / r;
    const cplx i{0.0, 1.0};
    return {c + i * sinc * az, i * sinc * cplx{ax, -ay}, i * sinc * cplx{ax, ay}, c - i * sinc * az};
}

Mat2 exp_i_pauli_derivative(double ax, double ay, double az, double dx, double dy, double dz) {
    const cplx i{0.0, 1.0};
    const Mat2 direction{cplx{dz}, cplx{dx, -dy}, cplx{dx, dy}, cplx{-dz}};
    const double r = std::sqrt(ax * ax + ay * ay + az * az);
    if (r < 1e-12) return i * direction;
    const Mat2 axis{cplx{az}, cplx{ax, -ay}, cplx{ax, ay}, cplx{-az}};
    const double dr = (ax * dx + ay * dy + az * dz) / r;
    const double sinc = std::sin(r) / r;
    const double dsinc = (r * std::cos(r) - std::sin(r)) / (r * r);
    return cplx{-std::sin(r) * dr} * Mat2::identity() + (i * dsinc * dr) * axis + (i * sinc) * direction;
}

Unitary2 rotation(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx mi{0.0, -1.0};
    return {c, mi * std::polar(s, -phi), mi * std::polar(s, phi), c};
}

Unitary2 rotation_with_detuning(double theta, double delta, double phi) {
    Unitary2 u = rotation(theta, phi);
    u.m00 *= std::polar(1.0, delta);
    u.m11 *= std::polar(1.0, -delta);
    return u;
}

Unitary2 compose(std::span<const Unitary2> factors) {
    if (factors.empty()) throw std::invalid_argument("empty product");
    Unitary2 acc = factors.front();
    for (const Unitary2& f : factors.subspan(1)) acc = acc * f;
    return acc;
}

double frobenius_fidelity(const Mat2& g, const Mat2& target) {
    const Mat2 d = g - target;
    double sq = 0.0;
    for (const cplx& e : d.entries()) sq += std::norm(e);
    return 1.0 - std::sqrt(sq / 4.0);
}

double trace_fidelity(const Mat2& g, const Mat2& target) {
    return 1.0 - 0.5 * std::abs((g * target.adjoint()).trace());
}

cplx aligning_phase(const Mat2& g, const Mat2& target) {
    const cplx overlap = (target.adjoint() * g).trace();
    return std::abs(overlap) == 0.0 ? cplx{1.0} : overlap / std::abs(overlap);
}

double phase_adjusted_distance(const Mat2& g, const Mat2& target) {
    const Mat2 d = g - aligning_phase(g, target) * target;
    double sq = 0.0;
    for (const cplx& e : d.entries()) sq += std::norm(e);
    return std::sqrt(sq / 4.0);
}

double phase_adjusted_fidelity(const Mat2& g, const Mat2& target) {
    return 1.0 - phase_adjusted_distance(g, target);
}

double t_state_beta() { return std::acos(1.0 / std::sqrt(3.0)) / 2.0; }

GateTarget t_gate_target(Convention convention) {
    const double theta = std::acos(1.0 / std::sqrt(3.0));
    // The X-Z frame realizes the same polar angle about the mirrored axis.
    const double phi = convention == Convention::XY ? 3.0 * pi / 4.0 : -3.0 * pi / 4.0;
    return {theta, phi, convention};
}

GateTarget h_gate_target() { return {pi / 4.0, pi / 2.0, Convention::XY}; }

Unitary2 target_unitary(const GateTarget& target) { return rotation(target.theta_star, target.phi_star); }

MagicFrame xy_magic_frame() {
    const double b = t_state_beta();
    const cplx w = std::polar(1.0, pi / 4.0);
    return {{std::cos(b), w * std::sin(b)}, {-std::conj(w) * std::sin(b), std::cos(b)}, Convention::XY};
}

MagicFrame h_magic_frame() {
    const double c = std::cos(pi / 8.0);
    const double s = std::sin(pi / 8.0);
    return {{c, s}, {-s, c}, Convention::XY};
}

MagicFrame magic_frame_for(const GateTarget& target) {
    const Unitary2 u = target_unitary(target);
    return {u.column(0), u.column(1), target.convention};
}

double t_magic_error(const Mat2& g, const MagicFrame& frame) {
    return std::norm(inner(frame.t1, g.column(0)));
}

double magic_t_gate_fidelity(const Mat2& g, const MagicFrame& frame) {
    return 1.0 - std::sqrt(t_magic_error(g, frame));
}

Populations dephased_populations(double theta, double delta, double phi) {
    const double r3 = std::sqrt(3.0);
    const double mix = std::sin(theta) * (std::cos(delta - phi) + std::sin(delta - phi));
    return {(3.0 + r3 * std::cos(theta) - r3 * mix) / 6.0, (3.0 - r3 * std::cos(theta) + r3 * mix) / 6.0};
}

DephasedOptimum min_dephased_error(double delta, double phi) {
    // p1 = (3 + a cos(theta) + b sin(theta)) / 6
    const double r3 = std::sqrt(3.0);
    const double a = -r3;
    const double b = r3 * (std::cos(delta - phi) + std::sin(delta - phi));
    double theta = std::atan2(-b, -a);
    if (theta < 0.0) theta += 2.0 * pi;
    return {theta, (3.0 - std::hypot(a, b)) / 6.0};
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * pi);
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

}  // namespace predistill
