#include "polariton/kinematics.hpp"

#include <algorithm>
#include <array>
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "polariton/dispersion.hpp"
#include "polariton/error.hpp"
#include "polariton/susceptibility.hpp"

namespace polariton {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 1>;
using std::numbers::pi;

namespace {

// same atoms, different drive strength: keep N fixed, not N / N_cr
ModelParams with_omega(const ModelParams& p, double omega) {
    ModelParams q = p;
    q.atom.coupling_g = coupling_of(p);
    q.atom.density_ratio.reset();
    q.drive.omega_rabi = omega;
    return q;
}

std::optional<double> threshold_crossing(const std::function<double(double)>& omega_at, const std::vector<double>& z,
                                         double omega_th) {
    if (z.empty() || omega_at(z.front()) <= omega_th) return z.empty() ? std::nullopt : std::optional(z.front());
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (omega_at(z[i]) > omega_th) continue;
        auto f = [&](double x) { return omega_at(x) - omega_th; };
        boost::uintmax_t it = 200;
        auto r = boost::math::tools::toms748_solve(f, z[i - 1], z[i], boost::math::tools::eps_tolerance<double>(50), it);
        return 0.5 * (r.first + r.second);
    }
    return std::nullopt;
}

}  // namespace

double drive_kappa(const ModelParams& p, double omega) {
    const ModelParams q = with_omega(p, omega);
    const cplx chi = chi_drive(q).chi;
    return -4.0 * pi * q.drive.doppler * chi.imag();
}

std::vector<double> cell_grid(const CellSpec& cell) {
    const int n = std::max(cell.z_samples, 3);
    std::vector<double> z{0.0};
    const double a = std::log(1e-6 * cell.length), b = std::log(cell.length);
    for (int i = 0; i < n - 1; ++i) z.push_back(std::exp(a + (b - a) * i / (n - 2)));
    z.back() = cell.length;
    return z;
}

DriveProfile drive_profile(const CellSpec& cell, const ModelParams& p) {
    return drive_profile(cell, p, [&](double om) { return drive_kappa(p, om); });
}

DriveProfile drive_profile(const CellSpec& cell, const ModelParams& p, const KappaFn& kappa) {
    if (!(cell.length > 0)) throw ParameterError("cell length must be positive");
    if (!(cell.omega0 > 0)) throw ParameterError("boundary Rabi frequency must be positive");
    const double L = cell.length;

    // y = ln Omega, dy/dz = -kappa / 2
    auto rhs = [&](const State& y, State& dy, double) { dy[0] = -0.5 * kappa(std::exp(y[0])); };
    std::vector<double> zs, ys, ds;
    auto record = [&](double z, double y) {
        State d;
        rhs({y}, d, z);
        zs.push_back(z);
        ys.push_back(y);
        ds.push_back(d[0]);
    };

    State y{std::log(cell.omega0)};
    record(0.0, y[0]);
    const double k0 = std::abs(ds.front()) * 2.0;
    const double dz0 = k0 > 0 ? std::min(L, 1e-2 / k0) : L;
    auto stepper = odeint::make_dense_output(1e-12, 1e-9, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(y, 0.0, dz0);
    long steps = 0;
    while (stepper.current_time() < L) {
        stepper.do_step(rhs);
        if (++steps > 1000000) throw NumericalError("drive profile integration did not finish");
        double z = stepper.current_time();
        State s = stepper.current_state();
        if (z >= L) {
            stepper.calc_state(L, s);
            z = L;
        }
        if (z > zs.back()) record(z, s[0]);
    }
    if (zs.size() < 2) record(L, ys.back());

    boost::math::interpolators::cubic_hermite<std::vector<double>> spline(std::move(zs), std::move(ys), std::move(ds));
    DriveProfile out;
    out.omega_at = [spline, L](double z) { return std::exp(spline(std::clamp(z, 0.0, L))); };
    out.z = cell_grid(cell);
    for (double z : out.z) out.omega.push_back(out.omega_at(z));
    out.threshold_z = threshold_crossing(out.omega_at, out.z, std::sqrt(p.atom.gamma_cb * kGamma));
    return out;
}

DriveProfile drive_profile_from_table(std::istream& in, const ModelParams& p) {
    std::vector<double> z, lo;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a)) continue;
        if (!(ls >> b)) throw ParameterError("drive table row needs two columns: " + line);
        if (!(b > 0)) throw ParameterError("drive table Omega must be positive");
        if (!z.empty() && !(a > z.back())) throw ParameterError("drive table z must increase");
        z.push_back(a);
        lo.push_back(std::log(b));
    }
    if (z.size() < 2) throw ParameterError("drive table needs at least two rows");

    DriveProfile out;
    out.omega_at = [z, lo](double x) {
        if (x <= z.front()) return std::exp(lo.front());
        if (x >= z.back()) return std::exp(lo.back());
        const auto j = static_cast<std::size_t>(std::upper_bound(z.begin(), z.end(), x) - z.begin());
        const double t = (x - z[j - 1]) / (z[j] - z[j - 1]);
        return std::exp(lo[j - 1] + t * (lo[j] - lo[j - 1]));
    };
    out.z = z;
    for (double x : z) out.omega.push_back(out.omega_at(x));
    out.threshold_z = threshold_crossing(out.omega_at, out.z, std::sqrt(p.atom.gamma_cb * kGamma));
    return out;
}

namespace {

void locate_freeze(VgProfile& v) {
    for (std::size_t i = 1; i < v.z.size(); ++i) {
        if (!(v.vg[i - 1] > 0 && v.vg[i] <= 0)) continue;
        if (v.vg[i] == 0) {
            v.freeze_point = v.z[i];
        } else {
            boost::uintmax_t it = 300;
            auto r = boost::math::tools::toms748_solve(v.vg_at, v.z[i - 1], v.z[i],
                                                       boost::math::tools::eps_tolerance<double>(52), it);
            v.freeze_point = 0.5 * (r.first + r.second);
        }
        const double zs = *v.freeze_point;
        const double h = 1e-5 * std::max(zs, v.z[i] - v.z[i - 1]);
        v.slope_at_freeze = -(v.vg_at(zs + h) - v.vg_at(zs - h)) / (2.0 * h);
        return;
    }
}

}  // namespace

VgProfile vg_profile(const DriveProfile& drive, const ModelParams& p, VgMode mode) {
    const double g = coupling_of(p);
    const double c = p.drive.c_over_vT;
    VgProfile out;
    out.z = drive.z;

    if (mode == VgMode::Closed) {
        const double v_d = -p.drive.delta_d / p.drive.doppler;
        const double beta = beta_of(p.distribution());
        const double F = velocity_pdf(p.distribution(), v_d);
        auto omega_at = drive.omega_at;
        out.vg_at = [=](double z) {
            if (g == 0) return c;
            const double gcr = critical_coupling(with_omega(p, omega_at(z)));
            return beta * gcr / (g * F) - v_d;
        };
        for (double z : out.z) out.vg.push_back(out.vg_at(z));
    } else {
        const ChiModel m = p.distribution() == Distribution::Lorentzian ? ChiModel::Residue : ChiModel::Quadrature;
        for (std::size_t i = 0; i < out.z.size(); ++i) {
            double v = c;
            if (g != 0) {
                try {
                    v = group_velocity_at_resonance(Susceptibility(m, with_omega(p, drive.omega[i]))).gv.vg;
                } catch (const NumericalError&) {
                    v = std::numeric_limits<double>::quiet_NaN();
                }
            }
            out.vg.push_back(v);
        }
        auto zs = out.z;
        auto vs = out.vg;
        out.vg_at = [zs, vs](double x) {
            if (x <= zs.front()) return vs.front();
            if (x >= zs.back()) return vs.back();
            const auto j = static_cast<std::size_t>(std::upper_bound(zs.begin(), zs.end(), x) - zs.begin());
            const double t = (x - zs[j - 1]) / (zs[j] - zs[j - 1]);
            return vs[j - 1] + t * (vs[j] - vs[j - 1]);
        };
    }
    locate_freeze(out);
    return out;
}

VgProfile vg_profile_from_function(std::function<double(double)> vg, double length, int samples) {
    VgProfile out;
    out.vg_at = std::move(vg);
    const int n = std::max(samples, 2);
    for (int i = 0; i < n; ++i) {
        out.z.push_back(length * i / (n - 1));
        out.vg.push_back(out.vg_at(out.z.back()));
    }
    locate_freeze(out);
    return out;
}

double integrate_position(const VgProfile& vg, double z_start, double duration) {
    State z{z_start};
    if (duration == 0) return z_start;
    auto rhs = [&](const State& x, State& dx, double) { dx[0] = vg.vg_at(x[0]); };
    const double v0 = std::abs(vg.vg_at(z_start));
    const double span = vg.z.empty() ? 1.0 : std::max(std::abs(vg.z.back() - vg.z.front()), 1e-300);
    double dt = v0 > 0 ? 1e-3 * span / v0 : 1e-3 * std::abs(duration);
    dt = std::min(dt, std::abs(duration));
    odeint::integrate_adaptive(odeint::make_controlled(1e-12 * span, 1e-8, odeint::runge_kutta_dopri5<State>()), rhs,
                               z, 0.0, duration, duration > 0 ? dt : -dt);
    return z[0];
}

KinematicsTrace pulse_trajectory(const CellSpec& cell, const VgProfile& vg, const std::vector<double>& times_in,
                                 double gamma_cb) {
    std::vector<double> times = times_in;
    std::sort(times.begin(), times.end());
    KinematicsTrace tr;
    tr.z = vg.z;
    tr.vg_of_z = vg.vg;
    tr.freeze_point = vg.freeze_point;
    if (times.empty()) return tr;
    if (times.front() < 0) throw ParameterError("trajectory times must be non-negative");

    const double z0 = cell.z0;
    auto add = [&](double t, double z, double vloc, std::optional<double> u) {
        tr.trajectory.push_back({t, z, u});
        Snapshot s;
        s.t = t;
        s.center = z;
        s.width = cell.duration * std::abs(vloc);
        s.log_amplitude = -gamma_cb * t + 0.0;  // no -0 at t = 0
        s.amplitude = std::exp(s.log_amplitude);
        s.log_distance = u;
        tr.snapshots.push_back(s);
    };

    const bool trapped = vg.freeze_point && z0 < *vg.freeze_point && vg.slope_at_freeze > 0;
    if (!trapped) {
        for (double t : times) {
            const double z = integrate_position(vg, z0, t);
            add(t, z, vg.vg_at(z), std::nullopt);
        }
        return tr;
    }

    // u = ln(z* - z): du/dt = -vg(z* - e^u) / e^u, which tends to the constant s at z*
    const double zs = *vg.freeze_point;
    const double s = vg.slope_at_freeze;
    const double u_switch = std::log(1e-8 * std::max(zs, zs - z0));
    auto vg_of_u = [&](double u) { return u > u_switch ? vg.vg_at(zs - std::exp(u)) : s * std::exp(u); };
    auto rhs = [&](const State& x, State& dx, double) { dx[0] = -vg_of_u(x[0]) / std::exp(x[0]); };

    State u{std::log(zs - z0)};
    const double dt0 = 1e-3 / std::max(s, 1e-300);
    auto stepper = odeint::make_dense_output(1e-10, 1e-10, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(u, 0.0, dt0);
    std::size_t next = 0;
    auto emit = [&](double t, double uu) { add(t, t == 0.0 ? z0 : zs - std::exp(uu), vg_of_u(uu), uu); };
    while (next < times.size() && times[next] == 0.0) emit(times[next++], u[0]);

    long steps = 0;
    while (next < times.size()) {
        stepper.do_step(rhs);
        if (++steps > 1000000) throw NumericalError("trajectory integration did not finish");
        const double t1 = stepper.current_time();
        while (next < times.size() && times[next] <= t1) {
            State x;
            stepper.calc_state(times[next], x);
            emit(times[next++], x[0]);
        }
        if (stepper.current_state()[0] <= u_switch) {
            tr.used_local_model = true;
            tr.switch_time = t1;
            const double u1 = stepper.current_state()[0];
            while (next < times.size()) {
                const double t = times[next++];
                emit(t, u1 - s * (t - t1));
            }
        }
    }
    return tr;
}

}  // namespace polariton
