#include "polariton/susceptibility.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "polariton/error.hpp"

namespace polariton {

namespace {
constexpr cplx I{0.0, 1.0};
}

std::string_view to_string(ChiModel m) {
    switch (m) {
    case ChiModel::Beam: return "beam";
    case ChiModel::Residue: return "residue";
    case ChiModel::Quadrature: return "quadrature";
    case ChiModel::Eit: return "eit";
    }
    return "?";
}

ChiModel chi_model_from_string(std::string_view s) {
    if (s == "beam") return ChiModel::Beam;
    if (s == "residue") return ChiModel::Residue;
    if (s == "quadrature") return ChiModel::Quadrature;
    if (s == "eit") return ChiModel::Eit;
    throw ParameterError("unknown model '" + std::string(s) + "'");
}

cplx chi_beam(cplx dw, cplx dk, double v, const Populations& pops, const ModelParams& p) {
    const double gamma = kGamma;
    const double gcb = p.atom.gamma_cb;
    const double Om = p.drive.omega_rabi;
    const double dd = p.drive.delta_d;
    const double kd = p.drive.doppler;
    const double g = coupling_of(p);
    const cplx k = kd + dk;

    const cplx G_ac = gamma + I * (dd + kd * v);
    const cplx G_ab = gamma + I * (dw + k * v);
    const cplx G_cb = gcb + I * (dw - dd + dk * v);
    return I * g * (pops.n_ab * G_cb + Om * Om * pops.n_ca / std::conj(G_ac)) / (G_ab * G_cb + Om * Om);
}

cplx chi_beam(const ProbePoint& q, double v, const Populations& pops, const ModelParams& p) {
    return chi_beam(cplx(q.d_omega), cplx(q.d_k), v, pops, p);
}

cplx chi_hot_residue(cplx dw, cplx dk, const ModelParams& p) {
    if (!p.is_hot_gas() || p.distribution() != Distribution::Lorentzian)
        throw ParameterError("residue susceptibility needs a Lorentzian hot gas; use the quadrature model");
    const double gamma = kGamma;
    const double vT = 1.0;
    const double gcb = p.atom.gamma_cb;
    const double Om = p.drive.omega_rabi;
    const double Om2 = Om * Om;
    const double dd = p.drive.delta_d;
    const double kd = p.drive.doppler;
    const double g = coupling_of(p);
    const double x = Om2 / (gcb * gamma);
    const double G = std::sqrt(1.0 + x);
    const double Gm1 = x / (G + 1.0);  // G - 1 without cancellation
    const cplx k = kd + dk;
    const cplx adk = abs_branch(dk);

    const cplx R1 = Om2 / (gamma * gamma + (dd - I * kd * vT) * (dd - I * kd * vT));
    const cplx R2 = Om2 / (kd * vT * kd * vT + (dd + I * gamma * G) * (dd + I * gamma * G));

    const cplx G1_ab = gamma + k * vT + I * dw;
    const cplx G1_ac = gamma + kd * vT + I * dd;
    const cplx G1_cb = gcb + adk * vT + I * (dw - dd);
    const cplx G2_ab = gamma * (1.0 + G * k / kd) + I * (dw - k * dd / kd);
    const cplx G2_cb = gcb + adk * gamma * G / kd + I * (dw - dd - dk * dd / kd);

    const cplx eta1 = (R1 * G1_ac - G1_cb * (1.0 + 2.0 * gamma * R1 / gcb)) /
                      (1.0 + gamma * gamma * (G * G - 1.0) * R1 / Om2);
    const cplx eta2 = kd * vT * R2 * (Om2 / Gm1 - G2_cb * gamma) / (gcb * gamma * G);

    return I * g / 2.0 * (eta1 / (Om2 + G1_ab * G1_cb) + eta2 / (Om2 + G2_ab * G2_cb));
}

cplx chi_hot_residue(const ProbePoint& q, const ModelParams& p) {
    return chi_hot_residue(cplx(q.d_omega), cplx(q.d_k), p);
}

namespace {

double half_range(const DerivedParams& d) {
    return std::max(10.0, std::abs(d.v_d) + 10.0 * d.gammaG / d.k_d);
}

// Both widths, v_T and gammaG / k_d, get their own breakpoints; otherwise a
// narrow peak can fall between the nodes of a wide first panel.
std::vector<double> scale_breakpoints(const DerivedParams& d) {
    std::vector<double> bp{0.0};
    const double w = d.gammaG / d.k_d;
    for (double s : {1.0, 2.0, 4.0, 8.0}) {
        bp.insert(bp.end(), {s, -s, d.v_d + s * w, d.v_d - s * w});
    }
    bp.push_back(d.v_d);
    return bp;
}

}  // namespace

QuadratureChi chi_hot_quadrature(cplx dw, cplx dk, const ModelParams& p, Distribution dist, const QuadOptions& opt) {
    const DerivedParams d = derive(p);
    const double gamma = kGamma;
    const double gcb = p.atom.gamma_cb;
    const double Om = p.drive.omega_rabi;
    const double kd = d.k_d;

    auto f = [&](double v) {
        const Populations pops = populations_steady_state(v, p.drive, p.atom);
        return velocity_pdf(dist, v) * chi_beam(dw, dk, v, pops, p);
    };

    const double w = dw.real();
    const double q = dk.real();
    const double delta = w - p.drive.delta_d;
    const double k = kd + q;
    std::vector<double> bp = scale_breakpoints(d);
    bp.push_back(-w / k);
    if (q != 0.0) bp.push_back(-delta / q);
    // real zeros of Re(G_ab G_cb + Omega^2) in v
    const double a2 = -k * q;
    const double a1 = -(k * delta + w * q);
    const double a0 = gamma * gcb + Om * Om - w * delta;
    if (a2 != 0.0) {
        const double disc = a1 * a1 - 4.0 * a2 * a0;
        if (disc >= 0) {
            const double s = std::sqrt(disc);
            bp.push_back((-a1 + s) / (2.0 * a2));
            bp.push_back((-a1 - s) / (2.0 * a2));
        }
    } else if (a1 != 0.0) {
        bp.push_back(-a0 / a1);
    }

    const QuadResult r = integrate_real_line(f, bp, half_range(d), opt);
    return {r.value, r.abs_error, r.evaluations};
}

QuadratureChi chi_hot_quadrature(const ProbePoint& q, const ModelParams& p, Distribution dist,
                                 const QuadOptions& opt) {
    return chi_hot_quadrature(cplx(q.d_omega), cplx(q.d_k), p, dist, opt);
}

cplx chi_eit_approx(cplx dw, cplx dk, const ModelParams& p) {
    const DerivedParams d = derive(p);
    const double gk0 = p.atom.gamma_cb + d.A;
    const cplx gk = gk0 + abs_branch(dk) * d.gammaG / d.k_d;
    const cplx wk = p.drive.delta_d * (1.0 + dk / d.k_d) + I * gk;
    const double gprime = d.coupling_g * d.N_prime_ratio;
    return gprime / d.gammaG * (d.A / (dw - wk) - I);
}

cplx chi_eit_approx(const ProbePoint& q, const ModelParams& p) {
    return chi_eit_approx(cplx(q.d_omega), cplx(q.d_k), p);
}

cplx chi_drive_velocity(double v, const ModelParams& p) {
    const Populations pops = populations_steady_state(v, p.drive, p.atom);
    const cplx G_ac = kGamma + I * (p.drive.delta_d + p.drive.doppler * v);
    return I * coupling_of(p) * (pops.rho_aa - pops.rho_cc) / G_ac;
}

QuadratureChi chi_drive(const ModelParams& p, const QuadOptions& opt) {
    const DerivedParams d = derive(p);
    const Distribution dist = p.distribution();
    auto f = [&](double v) { return velocity_pdf(dist, v) * chi_drive_velocity(v, p); };
    const QuadResult r = integrate_real_line(f, scale_breakpoints(d), half_range(d), opt);
    return {r.value, r.abs_error, r.evaluations};
}

Susceptibility::Susceptibility(ChiModel model, ModelParams params)
    : model_(model), params_(std::move(params)), derived_(derive(params_)) {
    switch (model_) {
    case ChiModel::Beam:
        beam_v_ = params_.beam_velocity();
        beam_pops_ = populations_steady_state(beam_v_, params_.drive, params_.atom);
        break;
    case ChiModel::Residue:
        if (!params_.is_hot_gas() || params_.distribution() != Distribution::Lorentzian)
            throw ParameterError("residue model needs a Lorentzian hot gas");
        break;
    case ChiModel::Quadrature:
    case ChiModel::Eit:
        if (!params_.is_hot_gas()) throw ParameterError("model needs a hot-gas medium");
        break;
    }
}

Susceptibility::Susceptibility(ModelParams params, const Populations& beam_pops)
    : model_(ChiModel::Beam), params_(std::move(params)), derived_(derive(params_)), beam_pops_(beam_pops) {
    beam_v_ = params_.beam_velocity();
}

cplx Susceptibility::operator()(cplx dw, cplx dk) const {
    switch (model_) {
    case ChiModel::Beam: return chi_beam(dw, dk, beam_v_, beam_pops_, params_);
    case ChiModel::Residue: return chi_hot_residue(dw, dk, params_);
    case ChiModel::Quadrature: return chi_hot_quadrature(dw, dk, params_, params_.distribution()).chi;
    case ChiModel::Eit: return chi_eit_approx(dw, dk, params_);
    }
    return {};
}

}  // namespace polariton
