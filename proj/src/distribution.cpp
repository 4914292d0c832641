#include "polariton/distribution.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polariton/error.hpp"

namespace polariton {

double velocity_pdf(Distribution d, double v) {
    using std::numbers::pi;
    if (d == Distribution::Lorentzian) return 1.0 / (pi * (1.0 + v * v));
    return std::exp(-v * v) / std::sqrt(pi);
}

double beta_of(Distribution d) {
    using std::numbers::pi;
    if (d == Distribution::Lorentzian) return 1.0 / (2.0 * pi);
    // max of v exp(-v^2)/sqrt(pi) sits at v = 1/sqrt(2)
    return std::exp(-0.5) / std::sqrt(2.0 * pi);
}

std::string_view to_string(Distribution d) {
    return d == Distribution::Lorentzian ? "lorentzian" : "maxwellian";
}

Distribution distribution_from_string(std::string_view s) {
    if (s == "lorentzian") return Distribution::Lorentzian;
    if (s == "maxwellian") return Distribution::Maxwellian;
    throw ParameterError("unknown distribution '" + std::string(s) + "'");
}

}  // namespace polariton
