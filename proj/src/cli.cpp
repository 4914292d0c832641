#include "polariton/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "polariton/config.hpp"
#include "polariton/dispersion.hpp"
#include "polariton/error.hpp"
#include "polariton/kernels.hpp"
#include "polariton/susceptibility.hpp"

namespace polariton {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kVersion = "polariton 1.0";

}  // namespace

long Dataset::nan_cells() const {
    long n = 0;
    for (const auto& t : tables)
        for (const auto& r : t.rows) n += std::count_if(r.begin(), r.end(), [](double x) { return !std::isfinite(x); });
    return n;
}

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 2) throw ParameterError("grid count must be at least 2");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[i] = start + (stop - start) * i / (count - 1);
    v.back() = stop;
    return v;
}

std::vector<double> SweepAxis::values() const { return linspace(start, stop, count); }

SweepAxis parse_sweep(std::string_view spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw ParameterError("sweep must be name:start:stop:count");
    auto num = [&](const std::string& s) {
        double x;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
        if (ec != std::errc() || p != s.data() + s.size()) throw ParameterError("bad number in sweep: " + s);
        return x;
    };
    SweepAxis a;
    a.name = parts[0];
    a.start = num(parts[1]);
    a.stop = num(parts[2]);
    const double c = num(parts[3]);
    if (c != std::floor(c) || c < 2 || c > 1e7) throw ParameterError("sweep count must be an integer >= 2");
    a.count = static_cast<int>(c);
    return a;
}

void write_csv(std::ostream& os, const Dataset& ds, const Table& t) {
    for (const auto& h : ds.header) os << "# " << h << '\n';
    if (!t.name.empty()) os << "# table: " << t.name << '\n';
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << format_double(r[j]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Dataset& ds) {
    nlohmann::ordered_json j;
    j["header"] = ds.header;
    j["tables"] = nlohmann::ordered_json::object();
    for (const auto& t : ds.tables) {
        nlohmann::ordered_json tj;
        tj["columns"] = t.columns;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& r : t.rows) {
            auto row = nlohmann::ordered_json::array();
            for (double x : r) {
                if (std::isfinite(x)) row.push_back(x);
                else row.push_back(nullptr);
            }
            rows.push_back(std::move(row));
        }
        tj["rows"] = std::move(rows);
        j["tables"][t.name] = std::move(tj);
    }
    os << j.dump(1) << '\n';
}

void write_dataset(const Dataset& ds, Format f, const std::string& path, std::ostream& os) {
    auto open = [](const std::string& p) {
        std::ofstream o(p, std::ios::binary);
        if (!o) throw std::ios_base::failure("cannot write '" + p + "'");
        return o;
    };
    auto check = [](std::ostream& o, const std::string& p) {
        o.flush();
        if (!o) throw std::ios_base::failure("write failed for '" + (p.empty() ? std::string("stdout") : p) + "'");
    };
    if (f == Format::Json) {
        if (path.empty()) {
            write_json(os, ds);
            check(os, path);
        } else {
            auto o = open(path);
            write_json(o, ds);
            check(o, path);
        }
        return;
    }
    if (path.empty()) {
        for (const auto& t : ds.tables) write_csv(os, ds, t);
        check(os, path);
        return;
    }
    if (ds.tables.size() == 1) {
        auto o = open(path);
        write_csv(o, ds, ds.tables.front());
        check(o, path);
        return;
    }
    const std::filesystem::path base(path);
    for (const auto& t : ds.tables) {
        auto p = base.parent_path() / (base.stem().string() + "_" + t.name + base.extension().string());
        auto o = open(p.string());
        write_csv(o, ds, t);
        check(o, p.string());
    }
}

// ---------------------------------------------------------------------------
// presets

ModelParams fig2_params(double density_ratio) {
    ModelParams p;
    p.atom.gamma_cb = 1e-3;
    p.atom.density_ratio = density_ratio;
    p.drive.omega_rabi = 0.25;
    p.drive.doppler = 100.0;
    p.drive.delta_d = -100.0;
    p.medium = HotGas{Distribution::Lorentzian};
    return p;
}

ModelParams fig3b_params() { return fig2_params(1.1); }

ModelParams fig3a_params() {
    // beam carrying the drifting-group density of the fig3b gas
    ModelParams gas = fig3b_params();
    const DerivedParams d = derive(gas);
    const double v = 1.0;
    ModelParams p = gas;
    p.medium = Beam{v};
    p.atom.density_ratio.reset();
    p.atom.coupling_g = 1.1 * d.coupling_g_cr * std::numbers::pi * velocity_pdf(Distribution::Lorentzian, v) *
                        d.gammaG / d.k_d;
    p.drive.delta_d = -v * p.drive.doppler;
    return p;
}

ModelParams fig5_params() {
    // fig3b gas with the drift set just below the first zero of the resonance group velocity,
    // so that v_g(0) > 0 and the weakening drive brings it to zero inside the cell
    ModelParams p = fig3b_params();
    const auto zeros = vg_resonance(p).zeros;
    p.drive.delta_d = -0.95 * zeros->first * p.drive.doppler;
    return p;
}

CellSpec fig5_cell() {
    const ModelParams p = fig5_params();
    const SiValues si = to_si(p, rb_like_reference());
    CellSpec c;
    c.length = si.length_from_cm(10.0);
    c.z_samples = 401;
    c.omega0 = p.drive.omega_rabi;
    c.z0 = 0.0;
    c.duration = 1.0 / p.atom.gamma_cb;
    return c;
}

namespace {

std::vector<std::string> base_header(const ModelParams& p, const std::string& command) {
    std::vector<std::string> h{kVersion, "command: " + command};
    for (auto& s : describe(p)) h.push_back("param " + s);
    const DerivedParams d = derive(p);
    auto dv = [&](const char* k, double x) { h.push_back(std::string("derived ") + k + " = " + format_double(x)); };
    dv("G", d.G);
    dv("gammaG", d.gammaG);
    dv("v_d", d.v_d);
    dv("coupling_g", d.coupling_g);
    dv("Ncr_ratio", d.Ncr_ratio);
    dv("beta", d.beta);
    if (p.is_beam()) {
        dv("vg_tilde", d.vg_tilde);
        dv("dk_eit", d.dk_eit);
        dv("domega_eit", d.domega_eit);
        dv("ddomega_eit", d.ddomega_eit);
    } else {
        dv("N_prime_ratio", d.N_prime_ratio);
        dv("vg_tilde_prime", d.vg_tilde_prime);
        dv("gamma_k", d.gamma_k);
        dv("dk_eit_prime", d.dk_eit_prime);
        dv("ddk_eit_prime", d.ddk_eit_prime);
    }
    const RegimeReport r = check_regime(p);
    int bad = 0;
    for (const auto& c : r.conditions) {
        const char* state = c.marginal ? "MARGINAL" : c.satisfied ? "ok" : "VIOLATED";
        bad += !c.satisfied || c.marginal;
        h.push_back("regime " + c.name + ": " + format_double(c.lhs) + " vs " + format_double(c.rhs) + " " + state);
    }
    h.push_back(bad ? "WARNING: " + std::to_string(bad) + " regime condition(s) not satisfied"
                    : std::string("regime: all conditions satisfied"));
    return h;
}

// Cartesian product of parameter axes, first axis outermost.
struct ParamGrid {
    std::vector<std::string> names;
    std::vector<std::vector<double>> points;
    std::vector<ModelParams> params;
};

ParamGrid param_grid(const ModelParams& base, const std::vector<SweepAxis>& axes) {
    ParamGrid g;
    std::vector<std::vector<double>> vals;
    for (const auto& a : axes) {
        g.names.push_back(a.name);
        vals.push_back(a.values());
    }
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        ModelParams q = base;
        std::vector<double> pt;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            set_param(q, axes[k].name, vals[k][idx[k]]);
            pt.push_back(vals[k][idx[k]]);
        }
        validate(q);
        g.params.push_back(std::move(q));
        g.points.push_back(std::move(pt));
        int k = static_cast<int>(axes.size()) - 1;
        while (k >= 0 && ++idx[k] == vals[k].size()) idx[k--] = 0;
        if (k < 0) break;
    }
    return g;
}

void note_sweep(std::vector<std::string>& h, const ParamGrid& g, const std::vector<SweepAxis>& axes) {
    for (const auto& a : axes)
        h.push_back("sweep " + a.name + " = " + format_double(a.start) + " .. " + format_double(a.stop) + " (" +
                    std::to_string(a.count) + " points)");
    if (axes.empty()) return;
    int bad = 0;
    for (const auto& q : g.params) bad += !check_regime(q).all_satisfied();
    if (bad) h.push_back("WARNING: regime conditions violated at " + std::to_string(bad) + " of " +
                         std::to_string(g.params.size()) + " sweep points");
}

ChiModel default_model(const ModelParams& p) {
    if (p.is_beam()) return ChiModel::Beam;
    return p.distribution() == Distribution::Lorentzian ? ChiModel::Residue : ChiModel::Quadrature;
}

std::vector<double> default_dk_grid(const ModelParams& p, int n) {
    const DerivedParams d = derive(p);
    const double w = 3.0 * (p.is_beam() ? d.dk_eit : d.dk_eit_prime);
    return linspace(-w, w, n);
}

std::vector<double> default_dw_grid(const ModelParams& p, int n) {
    const DerivedParams d = derive(p);
    const double w = 3.0 * (p.is_beam() ? d.domega_eit : d.gamma_k);
    auto g = linspace(-w, w, n);
    for (auto& x : g) x += p.drive.delta_d;
    return g;
}

double closed_vg(const ModelParams& q) {
    if (q.is_beam()) return derive(q).vg_tilde - q.beam_velocity();
    return vg_resonance_at(q, -q.drive.delta_d / q.drive.doppler);
}

}  // namespace

Dataset groupvel_sweep(const ModelParams& base, const std::vector<SweepAxis>& axes, bool numeric) {
    const ParamGrid g = param_grid(base, axes);
    Dataset ds;
    ds.header = base_header(base, "groupvel");
    note_sweep(ds.header, g, axes);
    Table t;
    t.name = "groupvel";
    t.columns = g.names;
    for (const char* c : {"delta_d_over_gamma", "v_d_over_vT", "vg_over_vT"}) t.columns.push_back(c);
    if (numeric)
        for (const char* c : {"vg_numeric_over_vT", "vg_imag_ratio", "dip_center_dk"}) t.columns.push_back(c);
    t.rows.resize(g.params.size());
    omp::for_each_index(g.params.size(), [&](std::size_t i) {
        const ModelParams& q = g.params[i];
        auto& r = t.rows[i];
        r = g.points[i];
        r.push_back(q.drive.delta_d);
        r.push_back(-q.drive.delta_d / q.drive.doppler + 0.0);
        r.push_back(closed_vg(q));
        if (!numeric) return;
        double vg = kNaN, ratio = kNaN, center = kNaN;
        try {
            const ResonanceVg rv = group_velocity_at_resonance(Susceptibility(default_model(q), q));
            vg = rv.gv.vg;
            ratio = rv.gv.vg_imag_ratio;
            center = rv.dk;
        } catch (const NumericalError&) {
        }
        r.insert(r.end(), {vg, ratio, center});
    });
    ds.tables.push_back(std::move(t));
    return ds;
}

namespace {

Dataset chi_dataset(const ModelParams& base, std::optional<ChiModel> model, std::vector<SweepAxis> axes) {
    std::vector<double> dws, dks{0.0};
    bool dw_set = false;
    std::vector<SweepAxis> paxes;
    for (auto& a : axes) {
        if (a.name == "d_omega") dws = a.values(), dw_set = true;
        else if (a.name == "d_k") dks = a.values();
        else paxes.push_back(a);
    }
    const ParamGrid g = param_grid(base, paxes);
    Dataset ds;
    ds.header = base_header(base, "chi");
    note_sweep(ds.header, g, paxes);
    const ChiModel m = model.value_or(default_model(base));
    ds.header.push_back("model = " + std::string(to_string(m)));
    Table t;
    t.name = "chi";
    t.columns = g.names;
    for (const char* c : {"d_omega", "d_k", "Re_chi", "Im_chi"}) t.columns.push_back(c);
    if (m == ChiModel::Quadrature) t.columns.push_back("abs_error");
    for (std::size_t i = 0; i < g.params.size(); ++i) {
        const ModelParams& q = g.params[i];
        const auto dw_axis = dw_set ? dws : default_dw_grid(q, 201);
        std::vector<ProbePoint> pts;
        for (double dw : dw_axis)
            for (double dk : dks) pts.push_back({dw, dk});
        std::vector<std::vector<double>> vals(pts.size());
        if (m == ChiModel::Quadrature) {
            omp::for_each_index(pts.size(), [&](std::size_t j) {
                try {
                    const QuadratureChi c = chi_hot_quadrature(pts[j], q, q.distribution());
                    vals[j] = {c.chi.real(), c.chi.imag(), c.abs_error};
                } catch (const QuadratureError&) {
                    vals[j] = {kNaN, kNaN, kNaN};
                }
            });
        } else {
            const Susceptibility chi(m, q);
            const auto c = omp::chi_grid(chi, pts);
            for (std::size_t j = 0; j < pts.size(); ++j) vals[j] = {c[j].real(), c[j].imag()};
        }
        for (std::size_t j = 0; j < pts.size(); ++j) {
            auto r = g.points[i];
            r.push_back(pts[j].d_omega);
            r.push_back(pts[j].d_k);
            r.insert(r.end(), vals[j].begin(), vals[j].end());
            t.rows.push_back(std::move(r));
        }
    }
    ds.tables.push_back(std::move(t));
    return ds;
}

Dataset dispersion_dataset(const ModelParams& base, std::optional<ChiModel> model, std::vector<SweepAxis> axes,
                           const std::string& command) {
    std::optional<std::vector<double>> grid;
    Orientation o = Orientation::InitialValue;
    std::vector<SweepAxis> paxes;
    for (auto& a : axes) {
        if (a.name == "d_k" || a.name == "d_omega") {
            if (grid) throw ParameterError("dispersion takes one probe axis (d_k or d_omega)");
            grid = a.values();
            o = a.name == "d_k" ? Orientation::InitialValue : Orientation::BoundaryValue;
        } else {
            paxes.push_back(a);
        }
    }
    const ParamGrid g = param_grid(base, paxes);
    Dataset ds;
    ds.header = base_header(base, command);
    note_sweep(ds.header, g, paxes);
    const ChiModel m = model.value_or(default_model(base));
    ds.header.push_back("model = " + std::string(to_string(m)));
    ds.header.push_back(o == Orientation::InitialValue ? "orientation = initial value (real dk)"
                                                       : "orientation = boundary value (real d_omega)");
    Table t;
    t.name = "dispersion";
    t.columns = g.names;
    if (o == Orientation::InitialValue)
        for (const char* c : {"dk", "Re_domega", "Im_domega", "residual"}) t.columns.push_back(c);
    else
        for (const char* c : {"domega", "Re_dk", "Im_dk", "residual"}) t.columns.push_back(c);

    std::vector<std::vector<std::vector<double>>> blocks(g.params.size());
    omp::for_each_index(g.params.size(), [&](std::size_t i) {
        const ModelParams& q = g.params[i];
        const auto in = grid ? *grid
                             : (o == Orientation::InitialValue ? default_dk_grid(q, 241) : default_dw_grid(q, 241));
        auto& b = blocks[i];
        try {
            const Susceptibility chi(m, q);
            const DispersionBranch br =
                o == Orientation::InitialValue ? solve_initial_value(in, chi) : solve_boundary_value(in, chi);
            for (const auto& s : br.samples) {
                auto r = g.points[i];
                r.insert(r.end(), {s.input, s.output.real(), s.output.imag(), s.residual});
                b.push_back(std::move(r));
            }
        } catch (const NumericalError&) {
            auto sorted = in;
            std::sort(sorted.begin(), sorted.end());
            for (double x : sorted) {
                auto r = g.points[i];
                r.insert(r.end(), {x, kNaN, kNaN, kNaN});
                b.push_back(std::move(r));
            }
        }
    });
    for (auto& b : blocks)
        for (auto& r : b) t.rows.push_back(std::move(r));
    ds.tables.push_back(std::move(t));
    return ds;
}

struct KinematicsOptions {
    std::optional<double> length;
    std::optional<double> length_cm;
    std::optional<double> omega0;
    double z0 = 0.0;
    std::optional<double> duration;
    int samples = 401;
    std::vector<double> times_over_tau{0, 1, 2, 3};
    std::string drive_table;
    VgMode mode = VgMode::Closed;
};

Dataset kinematics_dataset(const ModelParams& p, CellSpec cell, const KinematicsOptions& ko,
                           const std::string& command) {
    if (!p.is_hot_gas()) throw ParameterError("kinematics needs a hot-gas medium");
    std::optional<SiValues> si;
    try {
        si = to_si(p, rb_like_reference());
    } catch (const ParameterError&) {
    }
    if (ko.length) cell.length = *ko.length;
    if (ko.length_cm) cell.length = si->length_from_cm(*ko.length_cm);
    if (ko.omega0) cell.omega0 = *ko.omega0;
    if (ko.duration) cell.duration = *ko.duration;
    cell.z0 = ko.z0;
    cell.z_samples = ko.samples;

    ModelParams q = p;
    q.drive.omega_rabi = cell.omega0;
    DriveProfile drive;
    if (ko.drive_table.empty()) {
        drive = drive_profile(cell, q);
    } else {
        std::ifstream f(ko.drive_table);
        if (!f) throw std::ios_base::failure("cannot open drive table '" + ko.drive_table + "'");
        drive = drive_profile_from_table(f, q);
    }
    const VgProfile vg = vg_profile(drive, q, ko.mode);
    const double vg0 = vg.vg_at(cell.z0);
    if (!(vg0 > 0)) throw ParameterError("group velocity at the pulse entry is not positive: " + format_double(vg0));
    const double tau = 1.5 * cell.length / vg.vg_at(0.0);
    std::vector<double> times;
    for (double m : ko.times_over_tau) times.push_back(m * tau);
    const KinematicsTrace tr = pulse_trajectory(cell, vg, times, q.atom.gamma_cb);

    Dataset ds;
    ds.header = base_header(q, command);
    auto hv = [&](const std::string& k, double x) { ds.header.push_back("cell " + k + " = " + format_double(x)); };
    hv("length", cell.length);
    if (si) hv("length_cm", si->length_cm(cell.length));
    hv("omega0", cell.omega0);
    hv("z0", cell.z0);
    hv("duration", cell.duration);
    hv("tau", tau);
    hv("vg0", vg.vg_at(0.0));
    hv("freeze_point", vg.freeze_point.value_or(kNaN));
    hv("freeze_slope", vg.freeze_point ? vg.slope_at_freeze : kNaN);
    hv("threshold_z", drive.threshold_z.value_or(kNaN));
    if (drive.threshold_z)
        ds.header.push_back("WARNING: drive falls below the EIT threshold inside the cell");
    ds.header.push_back(std::string("cell vg_mode = ") + (ko.mode == VgMode::Closed ? "closed" : "numeric"));
    if (tr.used_local_model)
        ds.header.push_back("NOTE: linearized group velocity used near the freezing point from t = " +
                            format_double(tr.switch_time));

    Table prof{"profile", {"z", "z_cm", "omega", "vg"}, {}};
    for (std::size_t i = 0; i < drive.z.size(); ++i)
        prof.rows.push_back({drive.z[i], si ? si->length_cm(drive.z[i]) : kNaN, drive.omega[i], vg.vg[i]});
    Table traj{"trajectory", {"m", "t", "z", "z_cm", "log_distance", "width", "amplitude", "log_amplitude"}, {}};
    std::vector<double> ms = ko.times_over_tau;
    std::sort(ms.begin(), ms.end());
    for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
        const Snapshot& s = tr.snapshots[i];
        traj.rows.push_back({ms[i], s.t, s.center, si ? si->length_cm(s.center) : kNaN, s.log_distance.value_or(kNaN),
                             s.width, s.amplitude, s.log_amplitude});
    }
    ds.tables.push_back(std::move(prof));
    ds.tables.push_back(std::move(traj));
    return ds;
}

}  // namespace

Dataset run_preset(std::string_view id) {
    if (id == "fig2") {
        const std::vector<double> nus{0.6, 1.0, 1.5};
        const SweepAxis axis{"delta_d", 0.0, -300.0, 301};
        std::vector<Dataset> parts;
        for (double nu : nus) parts.push_back(groupvel_sweep(fig2_params(nu), {axis}));
        Dataset ds;
        ds.header = base_header(fig2_params(1.0), "preset fig2");
        ds.header.push_back("columns: group velocity at the EIT resonance for N/N_cr = 0.6, 1.0, 1.5");
        Table t{"fig2", {"delta_d_over_gamma", "v_d_over_vT", "vg_over_vT__N0.6", "vg__N1.0", "vg__N1.5"}, {}};
        const auto& rows0 = parts[0].tables[0].rows;
        // groupvel rows: delta_d (sweep), delta_d, v_d, vg
        for (std::size_t i = 0; i < rows0.size(); ++i)
            t.rows.push_back({rows0[i][1], rows0[i][2], parts[0].tables[0].rows[i][3],
                              parts[1].tables[0].rows[i][3], parts[2].tables[0].rows[i][3]});
        ds.tables.push_back(std::move(t));
        return ds;
    }
    if (id == "fig3a") return dispersion_dataset(fig3a_params(), ChiModel::Beam, {}, "preset fig3a");
    if (id == "fig3b") return dispersion_dataset(fig3b_params(), ChiModel::Residue, {}, "preset fig3b");
    if (id == "fig5") return kinematics_dataset(fig5_params(), fig5_cell(), {}, "preset fig5");
    throw ParameterError("unknown preset '" + std::string(id) + "' (fig2, fig3a, fig3b, fig5)");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Slow-light polariton calculator for a driven Lambda medium with moving atoms"};
    app.require_subcommand(1);
    std::string config, out_path, format = "csv", model, preset;
    std::vector<std::string> sweeps;
    bool numeric = false;
    KinematicsOptions ko;
    std::string vg_mode = "closed";

    auto common = [&](CLI::App* s) {
        s->add_option("--config", config, "key = value parameter file")->check(CLI::ExistingFile);
        s->add_option("--out", out_path, "output file (stdout if omitted)");
        s->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--sweep", sweeps, "name:start:stop:count (at most two)");
        s->add_option("--model", model, "beam, residue, quadrature or eit")
            ->check(CLI::IsMember({"beam", "residue", "quadrature", "eit"}));
    };
    auto* chi = app.add_subcommand("chi", "probe susceptibility on a detuning grid");
    auto* disp = app.add_subcommand("dispersion", "polariton branch (sweep d_k or d_omega picks the orientation)");
    auto* gv = app.add_subcommand("groupvel", "group velocity at the EIT resonance");
    auto* kin = app.add_subcommand("kinematics", "drive profile, local group velocity and pulse trajectory");
    auto* pre = app.add_subcommand("preset", "figure datasets");
    for (auto* s : {chi, disp, gv, kin, pre}) common(s);
    gv->add_flag("--numeric", numeric, "also solve the dispersion relation at each point");
    kin->add_option("--length", ko.length, "cell length in units of v_T / gamma");
    kin->add_option("--length-cm", ko.length_cm, "cell length in cm for the reference atom");
    kin->add_option("--omega0", ko.omega0, "Rabi frequency at the entrance (default omega_rabi)");
    kin->add_option("--z0", ko.z0, "initial pulse centre");
    kin->add_option("--duration", ko.duration, "pulse duration");
    kin->add_option("--samples", ko.samples, "profile samples")->check(CLI::Range(3, 1000000));
    kin->add_option("--times", ko.times_over_tau, "snapshot times in units of tau")->delimiter(',');
    kin->add_option("--drive-table", ko.drive_table, "two-column (z, Omega) table")->check(CLI::ExistingFile);
    kin->add_option("--vg-mode", vg_mode, "closed or numeric")->check(CLI::IsMember({"closed", "numeric"}));
    pre->add_option("--preset,id", preset, "fig2, fig3a, fig3b or fig5")
        ->check(CLI::IsMember({"fig2", "fig3a", "fig3b", "fig5"}))
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        Dataset ds;
        ModelParams p;
        if (!config.empty()) p = load_config(config);
        if (!pre->parsed()) validate(p);
        std::vector<SweepAxis> axes;
        for (const auto& s : sweeps) axes.push_back(parse_sweep(s));
        if (axes.size() > 2) throw ParameterError("at most two sweep axes");
        std::optional<ChiModel> m;
        if (!model.empty()) m = chi_model_from_string(model);

        if (pre->parsed()) {
            if (!axes.empty() || !config.empty()) throw ParameterError("presets take no config or sweeps");
            ds = run_preset(preset);
        } else if (chi->parsed()) {
            ds = chi_dataset(p, m, axes);
        } else if (disp->parsed()) {
            ds = dispersion_dataset(p, m, axes, "dispersion");
        } else if (gv->parsed()) {
            ds = groupvel_sweep(p, axes, numeric);
        } else {
            if (!axes.empty()) throw ParameterError("kinematics takes no sweeps");
            ko.mode = vg_mode == "numeric" ? VgMode::Numeric : VgMode::Closed;
            CellSpec cell;
            cell.omega0 = p.drive.omega_rabi;
            ds = kinematics_dataset(p, cell, ko, "kinematics");
        }
        const long nan = ds.nan_cells();
        std::size_t cells = 0;
        for (const auto& t : ds.tables)
            for (const auto& r : t.rows) cells += r.size();
        write_dataset(ds, format == "json" ? Format::Json : Format::Csv, out_path, out);
        if (nan > 0) err << "warning: " << nan << " non-finite output cell(s) written as NaN\n";
        if (cells > 0 && static_cast<std::size_t>(nan) == cells) {
            err << "error: every output cell is non-finite\n";
            return 3;
        }
        return 0;
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::ios_base::failure& e) {
        err << "I/O error: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace polariton
