#pragma once

#include "predistill/su2.hpp"

namespace predistill {

// |psi> = cos(theta)|0> + e^{i phi} sin(theta)|1>
struct InputState {
    double theta = 0.0;
    double phi = 0.0;

    Vec2 ket() const;
};

// Validated 2x2 density matrix.
class DensityMatrix2 {
public:
    explicit DensityMatrix2(const Mat2& m);
    static DensityMatrix2 pure(const Vec2& ket);

    const Mat2& matrix() const { return m_; }
    // Exactly zero for states built from a ket, where the 2x2 expansion
    // would leave round-off that a square root amplifies.
    double determinant() const;

private:
    Mat2 m_;
    bool pure_ = false;
};

// Coherence factor of the injected rotation for T-state errors eps1, eps2.
cplx injection_coefficient(double eps1, double eps2);

DensityMatrix2 injection_channel(const InputState& psi, double eps1, double eps2);
// Projector onto diag(1, e^{-i pi/6})|psi>, the error-free channel output.
DensityMatrix2 ideal_injection_output(const InputState& psi);

double jozsa_fidelity(const DensityMatrix2& rho, const DensityMatrix2& sigma);
double channel_fidelity(double theta, double eps1, double eps2);

}  // namespace predistill
