#include "polariton/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include "polariton/error.hpp"

namespace polariton {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& key, const std::string& v) {
    double x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw ParameterError("config: '" + key + "' needs a finite number, got '" + v + "'");
    return x;
}

}  // namespace

const std::vector<std::string>& numeric_param_names() {
    static const std::vector<std::string> names = {"gamma_cb",  "omega_rabi",   "delta_d",       "doppler",
                                                   "density_ratio", "coupling_g", "c_over_vT", "beam_velocity",
                                                   "branching_b",   "v_d"};
    return names;
}

void set_param(ModelParams& p, std::string_view name, double value) {
    if (name == "gamma_cb") p.atom.gamma_cb = value;
    else if (name == "omega_rabi") p.drive.omega_rabi = value;
    else if (name == "delta_d") p.drive.delta_d = value;
    else if (name == "doppler") p.drive.doppler = value;
    else if (name == "c_over_vT") p.drive.c_over_vT = value;
    else if (name == "branching_b") p.atom.branching_b = value;
    else if (name == "v_d") p.drive.delta_d = -value * p.drive.doppler;
    else if (name == "density_ratio") {
        p.atom.density_ratio = value;
        p.atom.coupling_g.reset();
    } else if (name == "coupling_g") {
        p.atom.coupling_g = value;
        p.atom.density_ratio.reset();
    } else if (name == "beam_velocity") {
        if (!p.is_beam()) throw ParameterError("beam_velocity set on a hot-gas medium");
        std::get<Beam>(p.medium).v = value;
    } else {
        throw ParameterError("unknown parameter '" + std::string(name) + "'");
    }
}

ModelParams parse_config(std::istream& in, ModelParams base) {
    ModelParams p = std::move(base);
    std::string line;
    int lineno = 0;
    std::optional<double> v_d, beam_v;
    bool saw_g = false, saw_nu = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string val = trim(std::string_view(t).substr(eq + 1));
        if (key == "medium") {
            if (val == "beam") p.medium = Beam{};
            else if (val == "hotgas" || val == "hot_gas") p.medium = HotGas{};
            else throw ParameterError("config: medium must be beam or hotgas");
        } else if (key == "distribution") {
            const Distribution d = distribution_from_string(val);
            if (p.is_hot_gas()) std::get<HotGas>(p.medium).dist = d;
            else if (d != Distribution::Lorentzian) throw ParameterError("config: distribution applies to hotgas only");
        } else if (key == "v_d") {
            v_d = parse_number(key, val);
        } else if (key == "beam_velocity") {
            beam_v = parse_number(key, val);
        } else if (key == "gamma") {
            if (parse_number(key, val) != kGamma) throw ParameterError("config: gamma is the frequency unit and must be 1");
        } else {
            if (std::find(numeric_param_names().begin(), numeric_param_names().end(), key) ==
                numeric_param_names().end())
                throw ParameterError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
            saw_g |= key == "coupling_g";
            saw_nu |= key == "density_ratio";
            set_param(p, key, parse_number(key, val));
        }
    }
    if (saw_g && saw_nu) throw ParameterError("config: give density_ratio or coupling_g, not both");
    if (beam_v) {
        if (!p.is_beam()) throw ParameterError("config: beam_velocity needs medium = beam");
        std::get<Beam>(p.medium).v = *beam_v;
    }
    if (v_d) set_param(p, "v_d", *v_d);
    validate(p);
    return p;
}

ModelParams load_config(const std::string& path, ModelParams base) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open config '" + path + "'");
    return parse_config(f, std::move(base));
}

std::string format_double(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> describe(const ModelParams& p) {
    std::vector<std::string> out;
    auto kv = [&](const std::string& k, const std::string& v) { out.push_back(k + " = " + v); };
    kv("gamma", format_double(kGamma));
    kv("gamma_cb", format_double(p.atom.gamma_cb));
    kv("branching_b", format_double(p.atom.branching_b));
    if (p.atom.density_ratio) kv("density_ratio", format_double(*p.atom.density_ratio));
    if (p.atom.coupling_g) kv("coupling_g", format_double(*p.atom.coupling_g));
    kv("omega_rabi", format_double(p.drive.omega_rabi));
    kv("delta_d", format_double(p.drive.delta_d));
    kv("doppler", format_double(p.drive.doppler));
    kv("c_over_vT", format_double(p.drive.c_over_vT));
    if (p.is_beam()) {
        kv("medium", "beam");
        kv("beam_velocity", format_double(p.beam_velocity()));
    } else {
        kv("medium", "hotgas");
        kv("distribution", std::string(to_string(p.distribution())));
    }
    return out;
}

}  // namespace polariton
