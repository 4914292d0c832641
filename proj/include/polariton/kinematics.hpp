#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <vector>

#include "polariton/model_params.hpp"

namespace polariton {

struct CellSpec {
    double length = 1.0;     // units of v_T / gamma
    int z_samples = 201;     // output grid: z = 0 plus geometric spacing from 1e-6 L to L
    double omega0 = 0.25;    // Rabi frequency at z = 0
    double z0 = 0.0;         // pulse centre at t = 0
    double duration = 1.0;   // pulse duration T, units of 1 / gamma
};

// Omega(z) on [0, L], callable anywhere inside the cell.
struct DriveProfile {
    std::vector<double> z;
    std::vector<double> omega;
    std::optional<double> threshold_z;  // first z with Omega^2 <= gamma_cb gamma
    std::function<double(double)> omega_at;
};

using KappaFn = std::function<double(double omega)>;

// Intensity absorption coefficient of the drive at Rabi frequency omega.
double drive_kappa(const ModelParams& p, double omega);

DriveProfile drive_profile(const CellSpec& cell, const ModelParams& p);
// test hook: arbitrary kappa_d(Omega)
DriveProfile drive_profile(const CellSpec& cell, const ModelParams& p, const KappaFn& kappa);
// two-column (z, Omega) table override; '#' starts a comment
DriveProfile drive_profile_from_table(std::istream& in, const ModelParams& p);

std::vector<double> cell_grid(const CellSpec& cell);

enum class VgMode { Closed, Numeric };

struct VgProfile {
    std::vector<double> z;
    std::vector<double> vg;
    std::optional<double> freeze_point;
    std::function<double(double)> vg_at;
    double slope_at_freeze = 0.0;  // -dvg/dz at z*, > 0 when the pulse is trapped
};

// Local group velocity with Omega(z) substituted into the parameters (density held fixed).
VgProfile vg_profile(const DriveProfile& drive, const ModelParams& p, VgMode mode = VgMode::Closed);
// Wraps an explicit vg(z) (tests, external tables).
VgProfile vg_profile_from_function(std::function<double(double)> vg, double length, int samples = 201);

struct TrajectoryPoint {
    double t = 0.0;
    double z = 0.0;
    // ln(z* - z); kept separately because z rounds to z* long before the pulse stops
    std::optional<double> log_distance;
};

struct Snapshot {
    double t = 0.0;
    double center = 0.0;
    double width = 0.0;
    double amplitude = 0.0;
    double log_amplitude = 0.0;
    std::optional<double> log_distance;
};

struct KinematicsTrace {
    std::vector<double> z;
    std::vector<double> omega_of_z;
    std::vector<double> vg_of_z;
    std::optional<double> freeze_point;
    std::optional<double> threshold_z;
    std::vector<TrajectoryPoint> trajectory;
    std::vector<Snapshot> snapshots;
    bool used_local_model = false;
    double switch_time = 0.0;
};

// Integrates dz/dt = vg(z) from cell.z0 and reports the requested times.
// Trapped pulses are tracked in ln(z* - z); the linearized vg = -s (z - z*)
// takes over once z* - z < 1e-8 z*.
KinematicsTrace pulse_trajectory(const CellSpec& cell, const VgProfile& vg, const std::vector<double>& times,
                                 double gamma_cb);

// z after `duration` (negative: backward) starting at z_start; adaptive, rtol 1e-8.
double integrate_position(const VgProfile& vg, double z_start, double duration);

}  // namespace polariton
