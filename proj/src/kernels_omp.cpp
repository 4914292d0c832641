#include <omp.h>

#include <exception>

#include "polariton/kernels.hpp"

namespace polariton::omp {

namespace {

// Runs body(i) in parallel; keeps the exception thrown at the lowest index so
// failures are reported the same way the serial loop would.
template <class Body>
void parallel_indices(std::size_t n, Body&& body) {
    std::exception_ptr err;
    long err_at = -1;
    const long N = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < N; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(polariton_err)
            if (err_at < 0 || i < err_at) {
                err_at = i;
                err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<cplx> chi_grid(const Susceptibility& chi, std::span<const ProbePoint> pts) {
    std::vector<cplx> out(pts.size());
    parallel_indices(pts.size(), [&](std::size_t i) { out[i] = chi(pts[i]); });
    return out;
}

std::vector<QuadratureChi> quadrature_grid(const ModelParams& p, std::span<const ProbePoint> pts,
                                           const QuadOptions& opt) {
    std::vector<QuadratureChi> out(pts.size());
    parallel_indices(pts.size(), [&](std::size_t i) { out[i] = chi_hot_quadrature(pts[i], p, p.distribution(), opt); });
    return out;
}

std::vector<ResonancePoint> resonance_sweep(const ModelParams& p, std::span<const double> delta_d) {
    std::vector<ResonancePoint> out(delta_d.size());
    parallel_indices(delta_d.size(), [&](std::size_t i) { out[i] = resonance_point(p, delta_d[i]); });
    return out;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& f) { parallel_indices(n, f); }

int max_threads() { return omp_get_max_threads(); }

}  // namespace polariton::omp
