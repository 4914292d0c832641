#pragma once

#include <complex>
#include <string_view>

#include "polariton/model_params.hpp"
#include "polariton/populations.hpp"
#include "polariton/quadrature.hpp"

namespace polariton {

using cplx = std::complex<double>;

// d_omega = omega - omega_ab, d_k = k - k_d - omega_cb / c
struct ProbePoint {
    double d_omega = 0.0;
    double d_k = 0.0;
};

enum class ChiModel { Beam, Residue, Quadrature, Eit };

std::string_view to_string(ChiModel m);
ChiModel chi_model_from_string(std::string_view s);

// |dk| continued off the real axis: the branch picked by the sign of Re dk
inline cplx abs_branch(cplx dk) { return dk.real() >= 0 ? dk : -dk; }

// Mono-velocity atoms; the complex overload is used by the root finders.
cplx chi_beam(cplx dw, cplx dk, double v, const Populations& pops, const ModelParams& p);
cplx chi_beam(const ProbePoint& q, double v, const Populations& pops, const ModelParams& p);

// Lorentzian gas summed over the two lower-half-plane velocity poles.
cplx chi_hot_residue(cplx dw, cplx dk, const ModelParams& p);
cplx chi_hot_residue(const ProbePoint& q, const ModelParams& p);

struct QuadratureChi {
    cplx chi;
    double abs_error = 0.0;
    long evaluations = 0;
};

// Direct velocity average of chi_beam with steady-state populations.
QuadratureChi chi_hot_quadrature(cplx dw, cplx dk, const ModelParams& p, Distribution dist,
                                 const QuadOptions& opt = {});
QuadratureChi chi_hot_quadrature(const ProbePoint& q, const ModelParams& p, Distribution dist,
                                 const QuadOptions& opt = {});

// Drifting-beam resonance plus flat background.
cplx chi_eit_approx(cplx dw, cplx dk, const ModelParams& p);
cplx chi_eit_approx(const ProbePoint& q, const ModelParams& p);

// Drive susceptibility of velocity class v (a-c transition, same dipole as a-b).
cplx chi_drive_velocity(double v, const ModelParams& p);
// Velocity average of chi_drive_velocity.
QuadratureChi chi_drive(const ModelParams& p, const QuadOptions& opt = {});

// A chi model bound to one parameter set. Immutable after construction.
class Susceptibility {
public:
    Susceptibility(ChiModel model, ModelParams params);
    // beam model with externally supplied populations (e.g. ideal_dark_populations())
    Susceptibility(ModelParams params, const Populations& beam_pops);

    cplx operator()(cplx dw, cplx dk) const;
    cplx operator()(const ProbePoint& q) const { return (*this)(cplx(q.d_omega), cplx(q.d_k)); }

    ChiModel model() const { return model_; }
    const ModelParams& params() const { return params_; }
    const DerivedParams& derived() const { return derived_; }

private:
    ChiModel model_;
    ModelParams params_;
    DerivedParams derived_;
    Populations beam_pops_;
    double beam_v_ = 0.0;
};

}  // namespace polariton
