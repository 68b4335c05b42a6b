#pragma once

#include <functional>
#include <string>
#include <vector>

#include "predistill/distill.hpp"
#include "predistill/su2.hpp"
#include "predistill/sweep.hpp"

namespace predistill {

struct Micrometers {
    double value;
};

struct Nanometers {
    double value;
};

struct CouplerSegment {
    double w1_nm = 400.0;
    double w2_nm = 400.0;
    double z_um = 0.0;

    friend bool operator==(const CouplerSegment&, const CouplerSegment&) = default;
};

struct CouplerDesign {
    std::vector<CouplerSegment> segments;
    int grid_nm = 1;

    friend bool operator==(const CouplerDesign&, const CouplerDesign&) = default;
};

// Receives one message per width pair evaluated outside the fitted range.
using WarningSink = std::function<void(const std::string&)>;

inline constexpr double fit_min_nm = 350.0;
inline constexpr double fit_max_nm = 450.0;

bool within_fit_range(double w_nm);

// Fitted detuning and coupling, in inverse micrometers.
double delta_of_widths(Micrometers w1, Micrometers w2);
double omega_of_widths(Micrometers w1, Micrometers w2);
// d/dw of omega_of_widths along a common width shift, per micrometer.
double omega_common_slope(Micrometers w1, Micrometers w2);
double delta_common_slope(Micrometers w1, Micrometers w2);

// exp(-i z (Omega X - Delta Z)) at widths shifted by dw.
Unitary2 coupler_segment_unitary(const CouplerSegment& seg, Nanometers dw, const WarningSink& warn = {});
// d/d(dw) of the segment unitary at dw = 0, per nanometer.
Mat2 coupler_segment_derivative(const CouplerSegment& seg);

Unitary2 design_unitary(const CouplerDesign& design, Nanometers dw, const WarningSink& warn = {});
Mat2 design_derivative(const CouplerDesign& design);

double total_length_um(const CouplerDesign& design);

// Best floor/ceil combination per parameter by phase-adjusted fidelity at dw = 0.
CouplerDesign round_to_grid(const CouplerDesign& design, const GateTarget& target);
// Independent nearest rounding of every parameter.
CouplerDesign round_to_nearest(const CouplerDesign& design);

struct SynthesizedDesign {
    CouplerDesign exact;
    CouplerDesign rounded;
    double residual = 0.0;
};

// Mirrored pair (w1, w2, z1), (w2, w1, z2) with z1 ~ z2. The exact solutions
// form a one-parameter family; the member whose grid rounding is most
// faithful wins.
SynthesizedDesign synthesize_two_segment(const GateTarget& target);

// Target match plus first-order insensitivity to a common width shift.
SynthesizedDesign synthesize_four_segment_robust(const GateTarget& target, const CouplerDesign& seed,
                                                 const WarningSink& warn = {});

// Residual used by the robust solve: max entry of the phase-aligned mismatch
// and of dU/d(dw) per nanometer.
double robust_design_residual(const CouplerDesign& design, const GateTarget& target);

SweepResult width_error_sweep(const CouplerDesign& design, const std::vector<double>& dw_nm, const GateTarget& target,
                              double distill_target = 1e-15, const WarningSink& warn = {});

}  // namespace predistill
