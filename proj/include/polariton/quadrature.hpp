#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace polariton {

struct QuadOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    long max_evals = 100000;
};

struct QuadResult {
    std::complex<double> value;
    double abs_error = 0.0;
    long evaluations = 0;
};

// Global adaptive Gauss-Kronrod (7/15) over the whole real line.
// [-V, V] is split at `breakpoints`; the two tails are mapped onto (0, 1] by v = +-V/t.
// Throws QuadratureError when the cap is reached before the tolerance.
QuadResult integrate_real_line(const std::function<std::complex<double>(double)>& f,
                               std::vector<double> breakpoints, double V, const QuadOptions& opt = {});

}  // namespace polariton
