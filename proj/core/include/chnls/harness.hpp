#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chnls/config.hpp"
#include "chnls/etdrk4.hpp"
#include "chnls/output.hpp"

namespace chnls {

/// Rotated-frame CH-NLS as a diagonal symbol plus nonlinear operator.
SpectralModel chnls_model(GridPtr grid, const ModelParams& params, bool dealias = true);

/// sqrt( sum_t w_t sum_{x_min <= x < x_max} |psi - psi_ref|^2 dx ), with
/// trapezoid weights w_t over the snapshots inside [t_min, t_max]. Throws
/// PreconditionError when the window leaves the domain or the snapshots do
/// not reach both ends of the time interval.
double l2_spacetime_error(const Trajectory& traj, const std::function<cx(double, double)>& reference,
                          const SpaceTimeWindow& window);

struct RunResult {
    RunManifest manifest;
    std::vector<SeriesRow> series;
    Trajectory trajectory;
};

RunResult run_single_soliton(const RunConfig& config);

struct ErrorScanRow {
    double epsilon = 0.0;
    double l2_error = 0.0;  ///< NaN if the run for this epsilon failed
};

struct ErrorScanResult {
    RunManifest manifest;
    std::vector<ErrorScanRow> rows;
    /// Least-squares slope of log(error) against log(epsilon), when >= 3 rows succeeded.
    std::optional<double> loglog_slope;
};

ErrorScanResult run_error_scan(const RunConfig& config);

struct CollisionSolitonSummary {
    PeakKind kind = PeakKind::Maximum;
    double pre_deviation = 0.0;   ///< mean |density - 1| at the tracked peak before the interaction
    double post_deviation = 0.0;  ///< same after the interaction
    double pre_speed = 0.0;
    double post_speed = 0.0;
    double survival_time = 0.0;   ///< last time the tracker saw the soliton
    bool lost = false;
};

struct CollisionResult {
    RunResult run;
    double t_meet = 0.0;
    std::array<CollisionSolitonSummary, 2> solitons;
};

RunResult run_collision_raw(const RunConfig& config);
CollisionResult run_collision(const RunConfig& config);

struct MiResult {
    RunManifest manifest;
    double rate = 0.0;
    std::string diagnostic;
    std::vector<double> times;
    std::vector<double> amplitudes;  ///< 2 |psi_hat_k| / N, equal to delta at t = 0
    double max_amplitude_change = 0.0;
};

MiResult run_mi_test(const RunConfig& config);

struct KdvBenchmarkResult {
    RunManifest manifest;
    double max_error = 0.0;
    double mass_drift = 0.0;
};

KdvBenchmarkResult run_kdv_benchmark(const RunConfig& config);

/// Runs whatever experiment the config names and returns its manifest.
RunManifest run_experiment(const RunConfig& config);

}  // namespace chnls
