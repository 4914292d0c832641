#pragma once

#include <complex>

#include "polariton/model_params.hpp"

namespace polariton {

struct Populations {
    double rho_aa = 0.0;
    double rho_bb = 0.5;
    double rho_cc = 0.5;
    std::complex<double> rho_ac{};  // drive coherence
    double n_ab = -0.5;              // rho_aa - rho_bb
    double n_ca = 0.5;               // rho_cc - rho_aa
};

// Drive-only Lambda steady state at one-photon detuning delta1 = delta_d + k_d v.
// a decays at gamma (fraction branching_b into b), b <-> c exchange at gamma_cb/2 each way.
Populations populations_at_detuning(double delta1, const DriveParams& drive, const AtomParams& atom);
Populations populations_steady_state(double v, const DriveParams& drive, const AtomParams& atom);

// ideal dark-state populations used by the closed-form beam expressions
inline Populations ideal_dark_populations() { return {0.0, 1.0, 0.0, {}, -1.0, 0.0}; }

}  // namespace polariton
