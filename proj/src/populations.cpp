#include "polariton/populations.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "polariton/error.hpp"

namespace polariton {

Populations populations_at_detuning(double delta1, const DriveParams& drive, const AtomParams& atom) {
    const double gamma = AtomParams::gamma;
    const double Ga = gamma;
    const double Om = drive.omega_rabi;
    const double r = atom.gamma_cb / 2.0;
    const double pb = atom.branching_b;

    // x = (rho_aa, rho_bb, rho_cc, Re rho_ac, Im rho_ac)
    Eigen::Matrix<double, 5, 5> M = Eigen::Matrix<double, 5, 5>::Zero();
    Eigen::Matrix<double, 5, 1> rhs = Eigen::Matrix<double, 5, 1>::Zero();

    M(0, 3) = -gamma;
    M(0, 4) = -delta1;

    M(1, 0) = Om;
    M(1, 2) = -Om;
    M(1, 3) = delta1;
    M(1, 4) = -gamma;

    M(2, 0) = -Ga;
    M(2, 4) = -2.0 * Om;

    M(3, 0) = Ga * pb;
    M(3, 1) = -r;
    M(3, 2) = r;

    M(4, 0) = M(4, 1) = M(4, 2) = 1.0;
    rhs(4) = 1.0;

    Eigen::PartialPivLU<Eigen::Matrix<double, 5, 5>> lu(M);
    if (!(std::abs(lu.determinant()) > 0)) throw NumericalError("singular steady-state system");
    const Eigen::Matrix<double, 5, 1> x = lu.solve(rhs);

    Populations p;
    p.rho_aa = x(0);
    p.rho_bb = x(1);
    p.rho_cc = x(2);
    p.rho_ac = {x(3), x(4)};
    p.n_ab = p.rho_aa - p.rho_bb;
    p.n_ca = p.rho_cc - p.rho_aa;
    return p;
}

Populations populations_steady_state(double v, const DriveParams& drive, const AtomParams& atom) {
    return populations_at_detuning(drive.delta_d + drive.doppler * v, drive, atom);
}

}  // namespace polariton
