#include "polariton/model_params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "polariton/error.hpp"

namespace polariton {

using std::numbers::pi;

double ModelParams::beam_velocity() const {
    if (auto* b = std::get_if<Beam>(&medium)) return b->v;
    throw ParameterError("medium is not a beam");
}

Distribution ModelParams::distribution() const {
    if (auto* h = std::get_if<HotGas>(&medium)) return h->dist;
    return Distribution::Lorentzian;
}

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw ParameterError(msg);
}

}  // namespace

void validate(const ModelParams& p) {
    const auto& a = p.atom;
    const auto& d = p.drive;
    require(std::isfinite(a.gamma_cb) && a.gamma_cb > 0, "gamma_cb must be positive");
    require(a.coupling_g.has_value() != a.density_ratio.has_value(),
            "exactly one of coupling_g and density_ratio must be given");
    if (a.coupling_g) require(std::isfinite(*a.coupling_g) && *a.coupling_g >= 0, "coupling_g must be >= 0");
    if (a.density_ratio)
        require(std::isfinite(*a.density_ratio) && *a.density_ratio >= 0, "density_ratio must be >= 0");
    require(a.branching_b >= 0 && a.branching_b <= 1, "branching_b must lie in [0,1]");
    require(std::isfinite(d.omega_rabi) && d.omega_rabi > 0, "omega_rabi must be positive");
    require(std::isfinite(d.doppler) && d.doppler > 0, "doppler must be positive");
    require(std::isfinite(d.delta_d), "delta_d must be finite");
    require(std::isfinite(d.c_over_vT) && d.c_over_vT > d.doppler, "c_over_vT must exceed doppler");
    if (p.is_beam()) require(std::isfinite(p.beam_velocity()), "beam velocity must be finite");
}

double critical_coupling(const ModelParams& p) {
    const double beta = beta_of(p.distribution());
    return p.drive.omega_rabi * std::sqrt(p.atom.gamma_cb / kGamma) / (2.0 * pi * pi * beta);
}

double coupling_of(const ModelParams& p) {
    if (p.atom.coupling_g) return *p.atom.coupling_g;
    if (p.atom.density_ratio) return *p.atom.density_ratio * critical_coupling(p);
    throw ParameterError("no density given");
}

DerivedParams derive(const ModelParams& p) {
    validate(p);
    const double gamma = kGamma;
    const double gcb = p.atom.gamma_cb;
    const double Om = p.drive.omega_rabi;
    const double D = p.drive.doppler;
    const double dd = p.drive.delta_d;

    DerivedParams r;
    r.G = std::sqrt(1.0 + Om * Om / (gcb * gamma));
    r.gammaG = gamma * r.G;
    r.k_d = D;
    r.v_d = -dd / r.k_d;
    r.coupling_g = coupling_of(p);
    r.coupling_g_cr = critical_coupling(p);
    r.Ncr_ratio = r.coupling_g / r.coupling_g_cr;
    r.beta = beta_of(p.distribution());
    r.N_prime_ratio = r.gammaG * D / (D * D + dd * dd);
    r.A = Om * Om / (gamma * (1.0 + r.G));
    r.gamma_k = gcb + r.A;

    const double g = r.coupling_g;
    r.vg_tilde = Om * Om / (2.0 * pi * g * r.k_d);
    r.vg_tilde_prime = (D * D + dd * dd) * Om * Om / (2.0 * pi * g * gamma * (1.0 + r.G) * r.k_d * r.k_d);

    const double v = p.is_beam() ? p.beam_velocity() : r.v_d;
    r.dk_eit = Om * Om / (gamma * r.vg_tilde);
    r.domega_eit = r.dk_eit * std::abs(r.vg_tilde - v);
    r.ddomega_eit = std::abs(r.vg_tilde - v) * Om * std::sqrt(gcb / gamma) / r.vg_tilde;
    r.dk_eit_prime = r.gamma_k / r.vg_tilde_prime;
    r.ddk_eit_prime = std::sqrt(gcb * r.gamma_k) / r.vg_tilde_prime;

    if (p.is_beam()) {
        r.kappa0 = gcb / r.vg_tilde;
        r.xi = gamma / (Om * Om * r.vg_tilde);
        r.alpha = (r.vg_tilde - v) / r.vg_tilde;
    } else {
        r.kappa0 = gcb / r.vg_tilde_prime;
        r.xi = 1.0 / (r.gamma_k * r.vg_tilde_prime);
        r.alpha = (r.vg_tilde_prime - r.v_d) / r.vg_tilde_prime;
    }
    return r;
}

double gamma_k_at(const ModelParams& p, const DerivedParams& d, double dk) {
    return p.atom.gamma_cb + d.A + std::abs(dk) * d.gammaG / d.k_d;
}

namespace {

enum class Rel { MuchLess, MuchGreater, Greater };

RegimeCondition make(std::string name, double lhs, double rhs, Rel rel) {
    RegimeCondition c{std::move(name), lhs, rhs, false, false};
    switch (rel) {
    case Rel::MuchLess:
        c.satisfied = kMuchLess * lhs <= rhs;
        c.marginal = !c.satisfied && lhs <= rhs;
        break;
    case Rel::MuchGreater:
        c.satisfied = lhs >= kMuchLess * rhs;
        c.marginal = !c.satisfied && lhs >= rhs;
        break;
    case Rel::Greater:
        c.marginal = std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs);
        c.satisfied = lhs > rhs && !c.marginal;
        break;
    }
    return c;
}

double finite_or(double x, double fallback) { return std::isfinite(x) ? x : fallback; }

}  // namespace

RegimeReport check_regime(const ModelParams& p) noexcept {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double gamma = kGamma;
    const double gcb = p.atom.gamma_cb;
    const double Om = p.drive.omega_rabi;
    const double D = p.drive.doppler;
    const double G = std::sqrt(1.0 + Om * Om / (gcb * gamma));
    const double gG = gamma * G;

    double g = nan;
    try {
        g = coupling_of(p);
    } catch (...) {
    }

    RegimeReport r;
    r.conditions.push_back(make("gamma_cb << gamma", gcb, gamma, Rel::MuchLess));
    r.conditions.push_back(make("gammaG << k_d v_T", gG, D, Rel::MuchLess));
    r.conditions.push_back(make("|delta_d| >> gammaG", std::abs(p.drive.delta_d), gG, Rel::MuchGreater));
    r.conditions.push_back(make("Omega^2 > gamma_cb gamma", Om * Om, gcb * gamma, Rel::Greater));
    // N and k_d^3 expressed through the radiative dipole: N / k_d^3 = 2 g / 3
    r.conditions.push_back(make("N << k_d^3 (gamma_cb/gamma) sqrt(k_d v_T/Omega)",
                                2.0 * g / 3.0, gcb / gamma * std::sqrt(D / Om), Rel::MuchLess));

    // kappa0 xi v^2 << (1 - v/vg)^2, written without the 1/v^2 so v = 0 stays finite
    double v, vg, kx;
    if (p.is_beam()) {
        v = std::get<Beam>(p.medium).v;
        vg = Om * Om / (2.0 * pi * g * D);
        kx = gcb / vg * gamma / (Om * Om * vg);
    } else {
        const double dd = p.drive.delta_d;
        v = -dd / D;
        const double gk = gcb + Om * Om / (gamma * (1.0 + G));
        vg = (D * D + dd * dd) * Om * Om / (2.0 * pi * g * gamma * (1.0 + G) * D * D);
        kx = gcb / vg / (gk * vg);
    }
    const double lhs6 = finite_or(kx * v * v, 0.0);
    const double rhs6 = finite_or((1.0 - v / vg) * (1.0 - v / vg), 1.0);
    r.conditions.push_back(make("kappa0 xi << (1 - v/vg)^2 / v^2", lhs6, rhs6, Rel::MuchLess));

    for (auto& c : r.conditions) {
        if (!std::isfinite(c.lhs) || !std::isfinite(c.rhs)) {
            c.lhs = finite_or(c.lhs, 0.0);
            c.rhs = finite_or(c.rhs, 0.0);
            c.satisfied = false;
            c.marginal = false;
        }
    }
    return r;
}

bool RegimeReport::all_satisfied() const {
    for (const auto& c : conditions)
        if (!c.satisfied) return false;
    return true;
}

bool RegimeReport::eit_conditions_hold() const {
    for (std::size_t i = 0; i < 4 && i < conditions.size(); ++i)
        if (!conditions[i].satisfied) return false;
    return true;
}

void enforce_regime(const RegimeReport& r) {
    std::ostringstream os;
    bool bad = false;
    for (const auto& c : r.conditions) {
        if (c.satisfied) continue;
        os << (bad ? "; " : "regime violated: ") << c.name << " (" << c.lhs << " vs " << c.rhs << ")";
        bad = true;
    }
    if (bad) throw ParameterError(os.str());
}

SiReference rb_like_reference() {
    return {795e-9, 3.0e6, 87.0};
}

namespace {
constexpr double kBoltzmann = 1.380649e-23;
constexpr double kAmu = 1.66053906660e-27;
}  // namespace

SiValues to_si(const ModelParams& p, const SiReference& ref) {
    if (!ref.lambda_d_m || !ref.gamma_over_2pi_hz) throw ParameterError("SI reference needs lambda_d and gamma");
    if (!(*ref.lambda_d_m > 0) || !(*ref.gamma_over_2pi_hz > 0)) throw ParameterError("SI reference must be positive");
    validate(p);

    SiValues s;
    s.gamma_rad_s = 2.0 * pi * *ref.gamma_over_2pi_hz;
    s.time_unit_s = 1.0 / s.gamma_rad_s;
    const double k_m = 2.0 * pi / *ref.lambda_d_m;
    s.k_d_per_cm = k_m / 100.0;
    s.v_T_m_s = p.drive.doppler * s.gamma_rad_s / k_m;
    s.length_unit_m = s.v_T_m_s / s.gamma_rad_s;

    // radiative dipole: mu^2/hbar = 3 gamma / (2 k^3) when gamma is the coherence decay
    const double k3 = s.k_d_per_cm * s.k_d_per_cm * s.k_d_per_cm;
    s.N_cm3 = 2.0 * coupling_of(p) * k3 / 3.0;
    s.N_cr_cm3 = 2.0 * critical_coupling(p) * k3 / 3.0;

    s.gamma_cb_hz = p.atom.gamma_cb * *ref.gamma_over_2pi_hz;
    s.omega_rabi_hz = p.drive.omega_rabi * *ref.gamma_over_2pi_hz;
    s.delta_d_hz = p.drive.delta_d * *ref.gamma_over_2pi_hz;
    if (ref.atomic_mass_amu)
        s.temperature_K = *ref.atomic_mass_amu * kAmu * s.v_T_m_s * s.v_T_m_s / (2.0 * kBoltzmann);
    return s;
}

ModelParams from_si(const SiValues& si, const ModelParams& shape) {
    ModelParams p = shape;
    const double f_gamma = si.gamma_rad_s / (2.0 * pi);
    p.atom.gamma_cb = si.gamma_cb_hz / f_gamma;
    p.drive.omega_rabi = si.omega_rabi_hz / f_gamma;
    p.drive.delta_d = si.delta_d_hz / f_gamma;
    p.drive.doppler = si.k_d_per_cm * 100.0 * si.v_T_m_s / si.gamma_rad_s;
    if (shape.atom.density_ratio) {
        p.atom.density_ratio = si.N_cm3 / si.N_cr_cm3;
    } else {
        const double k3 = si.k_d_per_cm * si.k_d_per_cm * si.k_d_per_cm;
        p.atom.coupling_g = 1.5 * si.N_cm3 / k3;
    }
    return p;
}

}  // namespace polariton
