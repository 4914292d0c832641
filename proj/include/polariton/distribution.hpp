#pragma once

#include <string_view>

namespace polariton {

enum class Distribution { Lorentzian, Maxwellian };

// Normalized velocity distributions with v_T = 1.
double velocity_pdf(Distribution d, double v);

// beta = max_v v F(v)
double beta_of(Distribution d);

std::string_view to_string(Distribution d);
Distribution distribution_from_string(std::string_view s);

}  // namespace polariton
