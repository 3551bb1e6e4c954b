#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "czsim/metrics.hpp"

namespace czsim {

/// Search point (Omega0/2pi [GHz], lambda1, lambda2).
using PulseShape = std::array<double, 3>;

struct OptimizeSettings {
    std::optional<PulseShape> initial;  ///< unset: area heuristic, see default_initial_point
    int max_evals = 400;
    double cost_tol = 1e-6;
    double simplex_scale = 0.1;  ///< relative initial step per coordinate
    EvolutionSettings evolution;

    void validate() const;
};

struct OptimizeResult {
    PulseParams pulse;
    GateReport report;
    double cost = kFailedCost;
    int evaluations = 0;
    bool converged = false;           ///< best cost <= cost_tol
    std::string stop_reason;          ///< "cost_tol", "max_evals" or "simplex_collapsed"
    std::vector<double> best_history; ///< best-so-far cost after each evaluation
};

/// Shape (0.3, 0.1) with Omega0 chosen so the envelope area equals one full
/// 2pi Rabi cycle of a coupler transition over t_f.
PulseShape default_initial_point(double t_f);

/// Nelder-Mead descent of phase_error^2 + leakage over (Omega0, lambda1, lambda2).
/// Deterministic for fixed inputs.
OptimizeResult optimize_pulse(const DeviceParams& device, double t_f, double detuning,
                              const OptimizeSettings& settings = {});

struct SweepMode {
    enum class Kind { fixed_pulse, optimize };
    Kind kind = Kind::fixed_pulse;
    PulseParams pulse;           ///< fixed_pulse: shape and amplitude; t_f/detuning are overridden
    OptimizeSettings optimize;   ///< optimize mode
    EvolutionSettings evolution; ///< fixed_pulse mode

    static SweepMode fixed(const PulseParams& pulse, const EvolutionSettings& evolution = {});
    static SweepMode optimizing(const OptimizeSettings& settings);
};

struct SweepRow {
    double t_g = 0.0;       ///< ns
    double detuning = 0.0;  ///< GHz
    double leakage = 0.0;
    double phase_error = 0.0;
    double infidelity = 0.0;
    double amp0 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    bool ok = false;
};

using SweepResult = std::vector<SweepRow>;

/// One row per detuning at fixed gate time.
SweepResult sweep_detuning(const DeviceParams& device, double t_f,
                           std::span<const double> detuning_grid, const SweepMode& mode);

/// Gate-time-major grid; cells run in parallel and rows come back in grid order.
SweepResult sweep_2d(const DeviceParams& device, std::span<const double> t_g_grid,
                     std::span<const double> detuning_grid, const SweepMode& mode);

}  // namespace czsim
