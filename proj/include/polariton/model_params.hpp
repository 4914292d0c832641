#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polariton/distribution.hpp"

namespace polariton {

// Unit system: gamma = 1 for rates, v_T = 1 for velocities, so k_d equals
// the Doppler width D and wavenumber detunings carry units of gamma / v_T.
inline constexpr double kGamma = 1.0;

struct AtomParams {
    static constexpr double gamma = kGamma;
    double gamma_cb = 1e-3;
    // exactly one of these two is set
    std::optional<double> coupling_g;
    std::optional<double> density_ratio;
    // fraction of a-decay that lands in b (the rest goes to c)
    double branching_b = 0.5;
};

struct DriveParams {
    double omega_rabi = 0.25;
    double delta_d = -100.0;
    double doppler = 100.0;
    double c_over_vT = 1e6;
};

struct Beam {
    double v = 0.0;
};

struct HotGas {
    Distribution dist = Distribution::Lorentzian;
};

using MediumSpec = std::variant<Beam, HotGas>;

struct ModelParams {
    AtomParams atom;
    DriveParams drive;
    MediumSpec medium = HotGas{};

    bool is_beam() const { return std::holds_alternative<Beam>(medium); }
    bool is_hot_gas() const { return std::holds_alternative<HotGas>(medium); }
    double beam_velocity() const;       // throws ParameterError for a hot gas
    Distribution distribution() const;  // Lorentzian for a beam (used for N_cr)
};

struct DerivedParams {
    double G = 1.0;
    double gammaG = 1.0;
    double k_d = 0.0;
    double v_d = 0.0;
    double coupling_g = 0.0;
    double coupling_g_cr = 0.0;  // coupling at N = N_cr
    double Ncr_ratio = 0.0;      // N / N_cr
    double beta = 0.0;
    double N_prime_ratio = 0.0;  // N' / N
    double A = 0.0;              // Omega^2 / gamma(1+G)
    double gamma_k = 0.0;        // at dk = 0
    double vg_tilde = 0.0;       // beam, n_ab -> -1 limit
    double vg_tilde_prime = 0.0; // hot gas
    // widths
    double dk_eit = 0.0;
    double domega_eit = 0.0;
    double ddomega_eit = 0.0;
    double dk_eit_prime = 0.0;
    double ddk_eit_prime = 0.0;
    // boundary expansion (beam values for a beam, primed values for a gas)
    double kappa0 = 0.0;
    double xi = 0.0;
    double alpha = 0.0;
};

void validate(const ModelParams& p);  // throws ParameterError
double coupling_of(const ModelParams& p);
double critical_coupling(const ModelParams& p);
DerivedParams derive(const ModelParams& p);

// gamma_k including the |dk| term
double gamma_k_at(const ModelParams& p, const DerivedParams& d, double dk);

struct RegimeCondition {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    bool marginal = false;
};

struct RegimeReport {
    std::vector<RegimeCondition> conditions;
    bool all_satisfied() const;
    // conditions a)-c) of the hot-gas analysis plus the EIT threshold
    bool eit_conditions_hold() const;
};

// factor used for every "much less than"
inline constexpr double kMuchLess = 10.0;

RegimeReport check_regime(const ModelParams& p) noexcept;
void enforce_regime(const RegimeReport& r);  // throws ParameterError naming the failures

struct SiReference {
    std::optional<double> lambda_d_m;
    std::optional<double> gamma_over_2pi_hz;
    std::optional<double> atomic_mass_amu;
};

SiReference rb_like_reference();

struct SiValues {
    double gamma_rad_s = 0.0;
    double k_d_per_cm = 0.0;
    double v_T_m_s = 0.0;
    double length_unit_m = 0.0;  // v_T / gamma
    double time_unit_s = 0.0;    // 1 / gamma
    double N_cm3 = 0.0;
    double N_cr_cm3 = 0.0;
    double gamma_cb_hz = 0.0;    // rates as angular frequency / 2 pi
    double omega_rabi_hz = 0.0;
    double delta_d_hz = 0.0;
    std::optional<double> temperature_K;

    double velocity_m_s(double v) const { return v * v_T_m_s; }
    double length_cm(double L) const { return L * length_unit_m * 100.0; }
    double length_from_cm(double cm) const { return cm / (length_unit_m * 100.0); }
};

SiValues to_si(const ModelParams& p, const SiReference& ref);
// inverse map for the fields carried by SiValues; medium and c are copied from `shape`
ModelParams from_si(const SiValues& si, const ModelParams& shape);

}  // namespace polariton
