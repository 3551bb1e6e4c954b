#pragma once

#include <array>

#include "czsim/device.hpp"
#include "czsim/propagator.hpp"
#include "czsim/pulse.hpp"
#include "czsim/spectrum.hpp"

namespace czsim {

/// 4x4 restriction of a gate to the dressed computational states, ordered
/// |00>, |10>, |01>, |11> (first index q1).
struct ComputationalBlock {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
};

/// theta_00, theta_10, theta_01, theta_11 in block order.
using Phases = std::array<double, 4>;

struct GateReport {
    Phases theta{};
    double cond_phase = 0.0;   ///< theta11 - theta01 - theta10 + theta00, not unwrapped
    double phase_error = 0.0;  ///< ||cond_phase| - pi|
    double leakage = 0.0;
    double fidelity = 0.0;
    std::array<double, 4> return_populations{};
};

inline constexpr double kFailedCost = 1.0e6;

ComputationalBlock extract_block(const OperatorMatrix& u, const DressedSpectrum& spectrum);

/// Block from dressed computational states P and their evolved images U P.
ComputationalBlock block_from_evolved(const Eigen::MatrixXcd& dressed,
                                      const Eigen::MatrixXcd& evolved);

/// theta = -arg(diagonal) in (-pi, pi]. Throws PhaseUndefined when any
/// |diagonal| <= 0.1.
Phases accumulated_phases(const ComputationalBlock& block);

double conditional_phase(const Phases& theta);
double phase_error(double cond_phase);

/// 1 - (sum of |block entries|^2) / 4.
double leakage(const ComputationalBlock& block);
double leakage_L1(const OperatorMatrix& u, const DressedSpectrum& spectrum);

/// Removes single-qubit Z phases and the global phase so the diagonal becomes
/// (1, 1, 1, exp(-i cond_phase)) up to off-diagonal structure.
ComputationalBlock virtual_z_compensate(const ComputationalBlock& block);

/// [Tr(M M^dag) + |Tr M|^2] / 20 with M = CZ^dag block.
double average_gate_fidelity(const ComputationalBlock& block);

GateReport gate_report(const ComputationalBlock& block);

/// Propagates the four dressed computational states and reports on the gate.
/// Throws AmbiguousLabeling if any label with at most two excitations is ambiguous.
GateReport simulate_gate(const DeviceParams& device, const PulseParams& pulse,
                         const EvolutionSettings& settings = {});
ComputationalBlock simulate_block(const DeviceParams& device, const PulseParams& pulse,
                                  const EvolutionSettings& settings = {});

/// phase_error^2 + leakage. Failed propagations or labeling return kFailedCost.
double cost(const GateReport& report);
double cost(const DeviceParams& device, double t_f, double detuning, double amp0, double lambda1,
            double lambda2, const EvolutionSettings& settings = {});

}  // namespace czsim
