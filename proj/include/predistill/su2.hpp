#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>

namespace predistill {

using cplx = std::complex<double>;
using Vec2 = std::array<cplx, 2>;

// Dense 2x2 complex matrix, row-major. Used for gates, their error
// derivatives and density matrices alike.
struct Mat2 {
    cplx m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};

    static constexpr Mat2 identity() { return {}; }
    static constexpr Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }

    Mat2 adjoint() const { return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)}; }
    cplx trace() const { return m00 + m11; }
    cplx det() const { return m00 * m11 - m01 * m10; }
    Vec2 column(int c) const { return c == 0 ? Vec2{m00, m10} : Vec2{m01, m11}; }
    std::array<cplx, 4> entries() const { return {m00, m01, m10, m11}; }

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(cplx s);

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator+(Mat2 a, const Mat2& b);
Mat2 operator-(Mat2 a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, Mat2 a);
Vec2 operator*(const Mat2& a, const Vec2& v);

using Unitary2 = Mat2;

inline constexpr Mat2 pauli_x{0.0, 1.0, 1.0, 0.0};
inline constexpr Mat2 pauli_y{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0};
inline constexpr Mat2 pauli_z{1.0, 0.0, 0.0, -1.0};

cplx inner(const Vec2& a, const Vec2& b);  // <a|b>
Mat2 outer(const Vec2& a, const Vec2& b);  // |a><b|

// Largest entry modulus.
double max_abs(const Mat2& m);
// max |(U^dagger U - I)_ij|
double unitarity_defect(const Mat2& u);

// exp(i (ax X + ay Y + az Z)) in closed form.
Unitary2 exp_i_pauli(double ax, double ay, double az);
// Directional derivative of exp_i_pauli along (dx, dy, dz).
Mat2 exp_i_pauli_derivative(double ax, double ay, double az, double dx, double dy, double dz);

// R(theta, phi) = exp(-i theta/2 (cos phi X + sin phi Y)).
Unitary2 rotation(double theta, double phi);
// Rotation with a symmetric Z detuning: diagonal entries carry e^{+-i delta}.
Unitary2 rotation_with_detuning(double theta, double delta, double phi);

// Ordered product; the first factor is leftmost.
Unitary2 compose(std::span<const Unitary2> factors);

double frobenius_fidelity(const Mat2& g, const Mat2& target);
double trace_fidelity(const Mat2& g, const Mat2& target);
// Frobenius distance sqrt(||G - e^{i gamma} T||^2 / 4) minimized over gamma.
double phase_adjusted_distance(const Mat2& g, const Mat2& target);
double phase_adjusted_fidelity(const Mat2& g, const Mat2& target);
// Phase e^{i gamma} that best aligns target with g.
cplx aligning_phase(const Mat2& g, const Mat2& target);

enum class Convention { XY, XZ };

struct GateTarget {
    double theta_star = 0.0;
    double phi_star = 0.0;
    Convention convention = Convention::XY;
};

// Half-angle of the T-state Bloch polar angle: cos^2(2 beta) = 1/3.
double t_state_beta();

GateTarget t_gate_target(Convention convention = Convention::XY);
GateTarget h_gate_target();
Unitary2 target_unitary(const GateTarget& target);

struct MagicFrame {
    Vec2 t0;
    Vec2 t1;
    Convention convention = Convention::XY;
};

MagicFrame xy_magic_frame();
// Eigenbasis of the Hadamard gate, prepared by the H-gate target.
MagicFrame h_magic_frame();
MagicFrame magic_frame_for(const GateTarget& target);

double t_magic_error(const Mat2& g, const MagicFrame& frame);
double magic_t_gate_fidelity(const Mat2& g, const MagicFrame& frame);

struct Populations {
    double p0;
    double p1;
};

// T-basis populations of R(theta, delta, phi)|0> after twirling.
Populations dephased_populations(double theta, double delta, double phi);

struct DephasedOptimum {
    double theta;
    double error;
};

DephasedOptimum min_dephased_error(double delta = 0.0, double phi = 0.0);

// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace predistill
