#pragma once

#include <vector>

#include "czsim/device.hpp"
#include "czsim/pulse.hpp"

namespace czsim {

struct EvolutionSettings {
    double dt = 0.005;       ///< ns
    int sample_stride = 100; ///< steps between trajectory samples

    /// Throws InvalidArgument unless dt > 0, stride >= 1 and t_f/dt >= 10.
    void validate(double t_f) const;
    /// Number of steps covering [0, t_f]; the effective step is t_f / steps.
    long steps(double t_f) const;
};

/// Bare-basis populations sampled along one propagation.
struct Trajectory {
    DeviceParams device;
    std::vector<double> times;          ///< ns
    Eigen::MatrixXd populations;        ///< (sample, flat bare index)
    std::vector<double> leakage_trace;  ///< 1 - population of bare |000>,|100>,|001>,|101>

    std::vector<double> population(const BasisLabel& label) const;
};

/// Evolves the columns of `initial` (bare-basis amplitudes) over steps
/// [first_step, last_step) of the gate grid. Each step applies the exact
/// exponential of the generator evaluated at the step midpoint. If the pulse's
/// drive frequency is unset it is resolved from the device spectrum.
Eigen::MatrixXcd evolve_states(const DeviceParams& device, const PulseParams& pulse,
                               const EvolutionSettings& settings, const Eigen::MatrixXcd& initial,
                               long first_step, long last_step);

Eigen::MatrixXcd evolve_states(const DeviceParams& device, const PulseParams& pulse,
                               const EvolutionSettings& settings, const Eigen::MatrixXcd& initial);

/// Full-space propagator U(t_f) in the drive frame.
OperatorMatrix evolve_unitary(const DeviceParams& device, const PulseParams& pulse,
                              const EvolutionSettings& settings);

/// Starts from the dressed state labeled `initial`.
Trajectory evolve_trajectory(const DeviceParams& device, const PulseParams& pulse,
                             const EvolutionSettings& settings, const BasisLabel& initial);

double max_unitarity_defect(const OperatorMatrix& u);

}  // namespace czsim
