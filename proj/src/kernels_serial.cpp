#include <cmath>
#include <exception>
#include <limits>

#include "polariton/dispersion.hpp"
#include "polariton/error.hpp"
#include "polariton/kernels.hpp"

namespace polariton {

ResonancePoint resonance_point(const ModelParams& p, double delta_d) {
    ModelParams q = p;
    // keep the atom density fixed while the detuning moves
    q.atom.coupling_g = coupling_of(p);
    q.atom.density_ratio.reset();
    q.drive.delta_d = delta_d;
    ResonancePoint r;
    r.delta_d = delta_d;
    r.v_d = -delta_d / q.drive.doppler;
    r.vg_closed = vg_resonance_at(q, r.v_d);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    r.vg_numeric = r.vg_imag_ratio = r.dip_center = nan;
    try {
        const ChiModel m = q.distribution() == Distribution::Lorentzian ? ChiModel::Residue : ChiModel::Quadrature;
        const ResonanceVg rv = group_velocity_at_resonance(Susceptibility(m, q));
        r.vg_numeric = rv.gv.vg;
        r.vg_imag_ratio = rv.gv.vg_imag_ratio;
        r.dip_center = rv.dk;
    } catch (const NumericalError&) {
    }
    return r;
}

namespace serial {

std::vector<cplx> chi_grid(const Susceptibility& chi, std::span<const ProbePoint> pts) {
    std::vector<cplx> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = chi(pts[i]);
    return out;
}

std::vector<QuadratureChi> quadrature_grid(const ModelParams& p, std::span<const ProbePoint> pts,
                                           const QuadOptions& opt) {
    std::vector<QuadratureChi> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = chi_hot_quadrature(pts[i], p, p.distribution(), opt);
    return out;
}

std::vector<ResonancePoint> resonance_sweep(const ModelParams& p, std::span<const double> delta_d) {
    std::vector<ResonancePoint> out(delta_d.size());
    for (std::size_t i = 0; i < delta_d.size(); ++i) out[i] = resonance_point(p, delta_d[i]);
    return out;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& f) {
    for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace serial
}  // namespace polariton
