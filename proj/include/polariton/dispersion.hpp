#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polariton/susceptibility.hpp"

namespace polariton {

enum class Orientation { InitialValue, BoundaryValue };

struct BranchSample {
    double input = 0.0;  // dk (initial value) or d_omega (boundary value)
    cplx output;         // d_omega or dk
    double residual = 0.0;  // |kc - omega n| / |kc|
};

struct DispersionBranch {
    Orientation orientation = Orientation::InitialValue;
    ChiModel model = ChiModel::Beam;
    std::vector<BranchSample> samples;
};

struct GroupVelocityPoint {
    double vg = 0.0;
    double vg_imag_ratio = 0.0;
    double temporal = 0.0;  // Re c / (n + w dn/dw)
    double spatial = 0.0;   // Re w dn/dk / (n + w dn/dw); vg = temporal - spatial
    cplx dw_dk;
};

// kc - omega n at the given detunings, divided by |kc|
double dispersion_residual(const Susceptibility& chi, cplx dw, cplx dk);

// Single complex Newton solves. Throw RootFindError on failure or when the
// iterate lands on the wrong branch.
cplx solve_omega(const Susceptibility& chi, double dk, cplx seed);
cplx solve_k(const Susceptibility& chi, double dw, cplx seed);

// Seeds from the linear slow-light law and the quadratic boundary expansion.
cplx seed_omega(const Susceptibility& chi, double dk);
cplx seed_k(const Susceptibility& chi, double dw);

// Grids need not be sorted; the returned samples are.
DispersionBranch solve_initial_value(std::span<const double> dk_grid, const Susceptibility& chi);
DispersionBranch solve_boundary_value(std::span<const double> dw_grid, const Susceptibility& chi);

GroupVelocityPoint group_velocity_numeric(const Susceptibility& chi, cplx dw, cplx dk);
GroupVelocityPoint group_velocity_numeric(const Susceptibility& chi, const ProbePoint& p);

// Dip of Im d_omega (initial value) or of -Im dk (boundary value) on a solved branch.
struct DipAnalysis {
    double center = 0.0;        // input value at the minimum
    cplx at_center;             // solution there
    double minimum = 0.0;       // Im d_omega, or -Im dk
    double slope = 0.0;         // Re d(output)/d(input) at the center
    std::optional<double> doubling_left;   // distance from center to where the minimum doubles
    std::optional<double> doubling_right;
};

DipAnalysis analyze_dip(const DispersionBranch& branch, const Susceptibility& chi);

struct ResonanceVg {
    double dk = 0.0;  // dip center
    cplx dw;
    GroupVelocityPoint gv;
};

// Group velocity at the bottom of the initial-value dip (minimum of Im d_omega),
// located on a grid of +-3 EIT half widths around dk = 0.
ResonanceVg group_velocity_at_resonance(const Susceptibility& chi, int grid_points = 121);

struct QuadraticExpansion {
    double dk0 = 0.0;
    double kappa0 = 0.0;
    double xi = 0.0;
    double alpha = 1.0;
    double vg_tilde = 0.0;
    double ddomega = 0.0;  // doubling detuning of the lab-frame dip
    double domega = 0.0;   // EIT half width
    double delta_d = 0.0;

    cplx dk(double d_omega) const;
};

// Closed-form coefficients (beam: vg_tilde, v; gas: vg_tilde', v_d). dk0 = 0 here.
QuadraticExpansion boundary_quadratic(const ModelParams& p);
// dk0 taken from the boundary solver at delta = 0
double boundary_dk0_numeric(const Susceptibility& chi);

// Drifting-beam initial-value law.
cplx closed_dispersion(double dk, const ModelParams& p);
// its small-dk parabola
cplx closed_dispersion_linearized(double dk, const ModelParams& p);

struct VgResonance {
    double vg = 0.0;
    std::optional<std::pair<double, double>> zeros;
    double vg_min = 0.0;
    double v_d_at_min = 0.0;
};

double vg_resonance_at(const ModelParams& p, double v_d);
VgResonance vg_resonance(const ModelParams& p);

enum class MetricsKind { Beam, HotGas };

struct EitMetrics {
    double dk_eit = 0.0;
    double domega_eit = 0.0;
    double ddomega_eit = 0.0;
    double dk_eit_prime = 0.0;
    double ddk_eit_prime = 0.0;
};

// Beam widths need a beam medium, primed widths a hot gas; the other group is NaN.
EitMetrics eit_metrics(const ModelParams& p, MetricsKind kind);

}  // namespace polariton
