#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "polariton/model_params.hpp"

namespace polariton {

// Flat key = value file, '#' comments, blank lines ignored.
// Keys: gamma_cb omega_rabi delta_d doppler density_ratio coupling_g medium
// distribution c_over_vT beam_velocity branching_b v_d.
// v_d is a shorthand for delta_d = -v_d * doppler and is applied last.
ModelParams parse_config(std::istream& in, ModelParams base = {});
ModelParams load_config(const std::string& path, ModelParams base = {});

// Single numeric assignment, used by sweeps. Unknown names throw ParameterError.
void set_param(ModelParams& p, std::string_view name, double value);
const std::vector<std::string>& numeric_param_names();

// Resolved parameters as "key = value" lines (17 significant digits).
std::vector<std::string> describe(const ModelParams& p);

std::string format_double(double x);

}  // namespace polariton
