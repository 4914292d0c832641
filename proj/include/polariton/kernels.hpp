#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "polariton/susceptibility.hpp"

namespace polariton {

// Grid kernels. The serial versions are the reference; the omp versions
// must return bit-identical results (every point is computed independently).

struct ResonancePoint {
    double delta_d = 0.0;
    double v_d = 0.0;
    double vg_closed = 0.0;
    double vg_numeric = 0.0;  // NaN where the solver failed
    double vg_imag_ratio = 0.0;
    double dip_center = 0.0;
};

namespace serial {
std::vector<cplx> chi_grid(const Susceptibility& chi, std::span<const ProbePoint> pts);
std::vector<QuadratureChi> quadrature_grid(const ModelParams& p, std::span<const ProbePoint> pts,
                                           const QuadOptions& opt = {});
// Residue model for a Lorentzian gas, quadrature otherwise.
std::vector<ResonancePoint> resonance_sweep(const ModelParams& p, std::span<const double> delta_d);
// f(i) for i in [0, n); the first exception (lowest i) is rethrown
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& f);
}  // namespace serial

namespace omp {
std::vector<cplx> chi_grid(const Susceptibility& chi, std::span<const ProbePoint> pts);
std::vector<QuadratureChi> quadrature_grid(const ModelParams& p, std::span<const ProbePoint> pts,
                                           const QuadOptions& opt = {});
std::vector<ResonancePoint> resonance_sweep(const ModelParams& p, std::span<const double> delta_d);
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& f);
int max_threads();
}  // namespace omp

// shared point routine behind both resonance sweeps
ResonancePoint resonance_point(const ModelParams& p, double delta_d);

}  // namespace polariton
