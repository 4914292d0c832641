#include "polariton/dispersion.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "polariton/error.hpp"

namespace polariton {

using std::numbers::pi;

namespace {

constexpr cplx I{0.0, 1.0};
constexpr int kMaxNewton = 50;

// (kc - omega n) / c with omega - omega_d written as delta
cplx scaled_residual(const Susceptibility& chi, cplx dw, cplx dk) {
    const ModelParams& p = chi.params();
    const double c = p.drive.c_over_vT;
    const double kd = p.drive.doppler;
    const cplx delta = dw - p.drive.delta_d;
    return dk - delta / c - 2.0 * pi * (kd + delta / c) * chi(dw, dk);
}

template <class F>
cplx newton(F f, cplx x, double h, double atol, const char* what) {
    cplx fx = f(x);
    for (int it = 1; it <= kMaxNewton; ++it) {
        const cplx df = (f(x + h) - f(x - h)) / (2.0 * h);
        if (!(std::abs(df) > 0) || !std::isfinite(std::abs(df))) throw RootFindError(what, x, it);
        cplx step = fx / df;
        cplx xn = x - step;
        cplx fn = f(xn);
        for (int k = 0; k < 12 && std::abs(fn) > std::abs(fx) && std::abs(step) > atol; ++k) {
            step *= 0.5;
            xn = x - step;
            fn = f(xn);
        }
        x = xn;
        fx = fn;
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw RootFindError(what, x, it);
        if (std::abs(step) <= 1e-11 * std::abs(x) + atol) return x;
    }
    throw RootFindError(what, x, kMaxNewton);
}

double omega_scale(const Susceptibility& chi) {
    const double gk = chi.derived().gamma_k;
    return gk > 0 ? gk : 1.0;
}

double k_scale(const Susceptibility& chi) {
    const DerivedParams& d = chi.derived();
    const double s = chi.model() == ChiModel::Beam ? d.dk_eit : d.dk_eit_prime;
    return (std::isfinite(s) && s > 0) ? s : 1.0;
}

bool has_medium(const Susceptibility& chi) { return chi.derived().coupling_g > 0; }

}  // namespace

double dispersion_residual(const Susceptibility& chi, cplx dw, cplx dk) {
    return std::abs(scaled_residual(chi, dw, dk)) / std::abs(chi.params().drive.doppler + dk);
}

cplx solve_omega(const Susceptibility& chi, double dk, cplx seed) {
    const double dd = chi.params().drive.delta_d;
    auto f = [&](cplx delta) { return scaled_residual(chi, dd + delta, cplx(dk)); };
    const cplx delta = newton(f, seed - dd, 1e-6 * omega_scale(chi), 1e-12, "initial-value Newton did not converge");
    if (has_medium(chi) && std::abs(delta) >= kGamma)
        throw RootFindError("initial-value Newton reached the vacuum branch", dd + delta, kMaxNewton);
    return dd + delta;
}

cplx solve_k(const Susceptibility& chi, double dw, cplx seed) {
    auto f = [&](cplx dk) { return scaled_residual(chi, cplx(dw), dk); };
    const cplx dk = newton(f, seed, 1e-6 * k_scale(chi), 1e-14, "boundary-value Newton did not converge");
    if (has_medium(chi) && std::abs(dk) >= 1.0)
        throw RootFindError("boundary-value Newton left the slow-light branch", dk, kMaxNewton);
    return dk;
}

cplx seed_omega(const Susceptibility& chi, double dk) {
    const ModelParams& p = chi.params();
    const DerivedParams& d = chi.derived();
    if (!has_medium(chi)) return p.drive.delta_d + p.drive.c_over_vT * dk;
    const double slope = chi.model() == ChiModel::Beam ? d.vg_tilde - p.beam_velocity() : d.vg_tilde_prime - d.v_d;
    return p.drive.delta_d + dk * slope + I * p.atom.gamma_cb;
}

cplx seed_k(const Susceptibility& chi, double dw) {
    const ModelParams& p = chi.params();
    const double delta = dw - p.drive.delta_d;
    if (!has_medium(chi)) return delta / p.drive.c_over_vT;
    try {
        return boundary_quadratic(p).dk(dw);
    } catch (const ExpansionSingularError&) {
        const DerivedParams& d = chi.derived();
        return delta / (p.is_beam() ? d.vg_tilde : d.vg_tilde_prime) - I * d.kappa0;
    }
}

namespace {

template <class Solve, class Seed>
DispersionBranch continuation(std::span<const double> grid, Orientation o, const Susceptibility& chi, Solve solve,
                              Seed seed) {
    std::vector<double> x(grid.begin(), grid.end());
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    std::vector<cplx> y(n);
    if (n == 0) return {o, chi.model(), {}};

    // start from the grid point closest to the resonance and continue outward
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i]) < std::abs(x[i0])) i0 = i;
    // boundary-value grids are centred on delta_d, not on zero
    if (o == Orientation::BoundaryValue) {
        const double dd = chi.params().drive.delta_d;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(x[i] - dd) < std::abs(x[i0] - dd)) i0 = i;
    }
    y[i0] = solve(x[i0], seed(x[i0]));

    auto step = [&](std::size_t i, std::size_t prev, std::ptrdiff_t dir) {
        cplx guess = y[prev];
        const std::ptrdiff_t pp = static_cast<std::ptrdiff_t>(prev) - dir;
        if (pp >= 0 && pp < static_cast<std::ptrdiff_t>(n) && prev != i0) {
            const auto q = static_cast<std::size_t>(pp);
            guess = y[prev] + (y[prev] - y[q]) * ((x[i] - x[prev]) / (x[prev] - x[q]));
        }
        try {
            y[i] = solve(x[i], guess);
        } catch (const RootFindError&) {
            y[i] = solve(x[i], y[prev]);
        }
    };
    for (std::size_t i = i0 + 1; i < n; ++i) step(i, i - 1, +1);
    for (std::size_t i = i0; i-- > 0;) step(i, i + 1, -1);

    DispersionBranch b{o, chi.model(), {}};
    b.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = o == Orientation::InitialValue ? dispersion_residual(chi, y[i], cplx(x[i]))
                                                        : dispersion_residual(chi, cplx(x[i]), y[i]);
        b.samples.push_back({x[i], y[i], r});
    }
    return b;
}

}  // namespace

DispersionBranch solve_initial_value(std::span<const double> dk_grid, const Susceptibility& chi) {
    return continuation(
        dk_grid, Orientation::InitialValue, chi, [&](double dk, cplx s) { return solve_omega(chi, dk, s); },
        [&](double dk) { return seed_omega(chi, dk); });
}

DispersionBranch solve_boundary_value(std::span<const double> dw_grid, const Susceptibility& chi) {
    return continuation(
        dw_grid, Orientation::BoundaryValue, chi, [&](double dw, cplx s) { return solve_k(chi, dw, s); },
        [&](double dw) { return seed_k(chi, dw); });
}

namespace {

template <class F>
cplx richardson(F f, cplx x, double h) {
    auto central = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace

GroupVelocityPoint group_velocity_numeric(const Susceptibility& chi, cplx dw, cplx dk) {
    const ModelParams& p = chi.params();
    const double c = p.drive.c_over_vT;
    const cplx omega = p.drive.doppler * c + (dw - p.drive.delta_d);
    const cplx n = 1.0 + 2.0 * pi * chi(dw, dk);
    const cplx dchi_dw = richardson([&](cplx w) { return chi(w, dk); }, dw, 1e-4 * omega_scale(chi));
    const cplx dchi_dk = richardson([&](cplx k) { return chi(dw, k); }, dk, 1e-4 * k_scale(chi));

    const cplx denom = n + omega * 2.0 * pi * dchi_dw;
    if (!(std::abs(denom) > 1e-300) || !std::isfinite(std::abs(denom)))
        throw SingularDispersionError("n + omega dn/domega vanishes");
    const cplx temporal = c / denom;
    const cplx spatial = omega * 2.0 * pi * dchi_dk / denom;

    GroupVelocityPoint g;
    g.dw_dk = temporal - spatial;
    g.vg = g.dw_dk.real();
    g.vg_imag_ratio = std::abs(g.dw_dk.imag()) / std::abs(g.dw_dk.real());
    g.temporal = temporal.real();
    g.spatial = spatial.real();
    return g;
}

GroupVelocityPoint group_velocity_numeric(const Susceptibility& chi, const ProbePoint& q) {
    return group_velocity_numeric(chi, cplx(q.d_omega), cplx(q.d_k));
}

DipAnalysis analyze_dip(const DispersionBranch& branch, const Susceptibility& chi) {
    const auto& s = branch.samples;
    if (s.size() < 3) throw NumericalError("dip analysis needs at least three samples");
    const bool iv = branch.orientation == Orientation::InitialValue;

    // re-solve at an arbitrary input, seeded from the nearest samples
    auto solve_at = [&](double x) {
        auto it = std::lower_bound(s.begin(), s.end(), x, [](const BranchSample& a, double v) { return a.input < v; });
        std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it - s.begin()), 1, s.size() - 1);
        const BranchSample& a = s[j - 1];
        const BranchSample& b = s[j];
        const cplx guess = a.output + (b.output - a.output) * ((x - a.input) / (b.input - a.input));
        return iv ? solve_omega(chi, x, guess) : solve_k(chi, x, guess);
    };
    auto value = [&](cplx out) { return iv ? out.imag() : -out.imag(); };

    std::size_t im = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (value(s[i].output) < value(s[im].output)) im = i;

    DipAnalysis r;
    if (im == 0 || im + 1 == s.size()) {
        r.center = s[im].input;
        r.at_center = s[im].output;
    } else {
        auto f = [&](double x) { return value(solve_at(x)); };
        auto m = boost::math::tools::brent_find_minima(f, s[im - 1].input, s[im + 1].input, 40);
        r.center = m.first;
        r.at_center = solve_at(m.first);
    }
    r.minimum = value(r.at_center);

    const GroupVelocityPoint gv = iv ? group_velocity_numeric(chi, r.at_center, cplx(r.center))
                                     : group_velocity_numeric(chi, cplx(r.center), r.at_center);
    r.slope = iv ? gv.dw_dk.real() : (1.0 / gv.dw_dk).real();

    const double target = 2.0 * r.minimum;
    auto crossing = [&](std::ptrdiff_t dir) -> std::optional<double> {
        std::ptrdiff_t j = static_cast<std::ptrdiff_t>(im);
        while (true) {
            const std::ptrdiff_t k = j + dir;
            if (k < 0 || k >= static_cast<std::ptrdiff_t>(s.size())) return std::nullopt;
            if (value(s[static_cast<std::size_t>(k)].output) >= target) {
                double a = s[static_cast<std::size_t>(j)].input;
                double b = s[static_cast<std::size_t>(k)].input;
                if (j == static_cast<std::ptrdiff_t>(im)) a = r.center;
                auto g = [&](double x) { return value(solve_at(x)) - target; };
                if (g(a) >= 0) return std::abs(a - r.center);
                boost::uintmax_t iters = 100;
                auto root = boost::math::tools::toms748_solve(g, std::min(a, b), std::max(a, b),
                                                              boost::math::tools::eps_tolerance<double>(40), iters);
                return std::abs(0.5 * (root.first + root.second) - r.center);
            }
            j = k;
        }
    };
    r.doubling_left = crossing(-1);
    r.doubling_right = crossing(+1);
    return r;
}

ResonanceVg group_velocity_at_resonance(const Susceptibility& chi, int grid_points) {
    const double half = 3.0 * k_scale(chi);
    std::vector<double> grid(static_cast<std::size_t>(std::max(grid_points, 3)));
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
    const DipAnalysis dip = analyze_dip(solve_initial_value(grid, chi), chi);
    return {dip.center, dip.at_center, group_velocity_numeric(chi, dip.at_center, cplx(dip.center))};
}

cplx QuadraticExpansion::dk(double d_omega) const {
    const double dw = d_omega - delta_d;
    return dk0 + (dw / vg_tilde - I * kappa0 - I * xi * (dw / alpha) * (dw / alpha)) / alpha;
}

QuadraticExpansion boundary_quadratic(const ModelParams& p) {
    const DerivedParams d = derive(p);
    QuadraticExpansion q;
    q.vg_tilde = p.is_beam() ? d.vg_tilde : d.vg_tilde_prime;
    q.kappa0 = d.kappa0;
    q.xi = d.xi;
    q.alpha = d.alpha;
    q.delta_d = p.drive.delta_d;
    if (!(std::abs(q.alpha) > 1e-12)) throw ExpansionSingularError("alpha = 0: drift velocity equals the slow-light velocity");
    q.ddomega = std::abs(q.alpha) * std::sqrt(q.kappa0 / q.xi);
    q.domega = p.is_beam() ? d.domega_eit : d.dk_eit_prime * std::abs(d.vg_tilde_prime - d.v_d);
    return q;
}

double boundary_dk0_numeric(const Susceptibility& chi) {
    const double dd = chi.params().drive.delta_d;
    return solve_k(chi, dd, seed_k(chi, dd)).real();
}

cplx closed_dispersion(double dk, const ModelParams& p) {
    const DerivedParams d = derive(p);
    const double gk = gamma_k_at(p, d, dk);
    const double gprime = d.coupling_g * d.N_prime_ratio;
    const double x = d.gammaG * dk / (2.0 * pi * d.k_d * gprime);
    return p.drive.delta_d - d.v_d * dk + I * gk + d.A / (x + I);
}

cplx closed_dispersion_linearized(double dk, const ModelParams& p) {
    const DerivedParams d = derive(p);
    const double v = d.vg_tilde_prime;
    return p.drive.delta_d + dk * (v - d.v_d) + I * p.atom.gamma_cb + I * dk * dk * v * v / d.gamma_k;
}

double vg_resonance_at(const ModelParams& p, double v_d) {
    const DerivedParams d = derive(p);
    return d.beta / (d.Ncr_ratio * velocity_pdf(p.distribution(), v_d)) - v_d;
}

VgResonance vg_resonance(const ModelParams& p) {
    if (!p.is_hot_gas()) throw ParameterError("resonance group velocity is defined for a hot gas");
    const DerivedParams d = derive(p);
    const double nu = d.Ncr_ratio;
    VgResonance r;
    r.vg = vg_resonance_at(p, d.v_d);

    if (p.distribution() == Distribution::Lorentzian) {
        if (nu >= 1.0) {
            const double s = std::sqrt(nu * nu - 1.0);
            r.zeros = std::make_pair(nu - s, nu + s);
        }
        r.v_d_at_min = nu;
        r.vg_min = -(nu / 2.0) * (1.0 - 1.0 / (nu * nu));
        return r;
    }

    // Maxwellian: zeros of v F(v) = beta / nu on either side of the peak at 1/sqrt(2)
    const Distribution dist = p.distribution();
    auto h = [&](double v) { return v * velocity_pdf(dist, v) - d.beta / nu; };
    const double vpk = 1.0 / std::sqrt(2.0);
    if (nu >= 1.0) {
        if (nu == 1.0) {
            r.zeros = std::make_pair(vpk, vpk);
        } else {
            auto tol = boost::math::tools::eps_tolerance<double>(50);
            boost::uintmax_t it1 = 200, it2 = 200;
            auto a = boost::math::tools::toms748_solve(h, 0.0, vpk, tol, it1);
            double hi = 2.0;
            while (h(hi) > 0) hi *= 2.0;
            auto b = boost::math::tools::toms748_solve(h, vpk, hi, tol, it2);
            r.zeros = std::make_pair(0.5 * (a.first + a.second), 0.5 * (b.first + b.second));
        }
    }
    auto vg = [&](double v) { return vg_resonance_at(p, v); };
    auto m = boost::math::tools::brent_find_minima(vg, 0.0, 3.0 + 2.0 * nu, 50);
    r.v_d_at_min = m.first;
    r.vg_min = m.second;
    return r;
}

EitMetrics eit_metrics(const ModelParams& p, MetricsKind kind) {
    const DerivedParams d = derive(p);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EitMetrics m{nan, nan, nan, nan, nan};
    if (kind == MetricsKind::Beam) {
        if (!p.is_beam()) throw ParameterError("beam EIT metrics requested for a hot gas");
        m.dk_eit = d.dk_eit;
        m.domega_eit = d.domega_eit;
        m.ddomega_eit = d.ddomega_eit;
    } else {
        if (!p.is_hot_gas()) throw ParameterError("hot-gas EIT metrics requested for a beam");
        m.dk_eit_prime = d.dk_eit_prime;
        m.ddk_eit_prime = d.ddk_eit_prime;
        if (!(m.ddk_eit_prime < m.dk_eit_prime)) throw NumericalError("doubling width not below the half width");
    }
    return m;
}

}  // namespace polariton
