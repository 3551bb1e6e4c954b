#include "czsim/metrics.hpp"

#include <cmath>
#include <numbers>

#include "czsim/errors.hpp"

namespace czsim {

namespace {

constexpr double kMinReturnAmplitude = 0.1;

double principal(double x) {
    // (-pi, pi]
    double y = std::remainder(x, kTwoPi);
    if (y <= -std::numbers::pi) y += kTwoPi;
    return y;
}

}  // namespace

ComputationalBlock extract_block(const OperatorMatrix& u, const DressedSpectrum& spectrum) {
    const Eigen::MatrixXcd p = spectrum.computational_vectors();
    const Eigen::MatrixXcd full = u;
    return block_from_evolved(p, full * p);
}

ComputationalBlock block_from_evolved(const Eigen::MatrixXcd& dressed,
                                      const Eigen::MatrixXcd& evolved) {
    if (dressed.cols() != 4 || evolved.cols() != 4 || dressed.rows() != evolved.rows()) {
        throw InvalidArgument("block_from_evolved expects two dim x 4 matrices");
    }
    ComputationalBlock b;
    b.u = dressed.adjoint() * evolved;
    return b;
}

Phases accumulated_phases(const ComputationalBlock& block) {
    Phases theta{};
    for (int k = 0; k < 4; ++k) {
        const Complex d = block.u(k, k);
        if (std::abs(d) <= kMinReturnAmplitude) {
            throw PhaseUndefined("computational state " + std::to_string(k) +
                                 " does not return; phase undefined");
        }
        theta[k] = principal(-std::arg(d));
    }
    return theta;
}

double conditional_phase(const Phases& t) { return t[3] - t[2] - t[1] + t[0]; }

double phase_error(double cond_phase) { return std::abs(std::abs(cond_phase) - std::numbers::pi); }

double leakage(const ComputationalBlock& block) { return 1.0 - block.u.squaredNorm() / 4.0; }

double leakage_L1(const OperatorMatrix& u, const DressedSpectrum& spectrum) {
    return leakage(extract_block(u, spectrum));
}

ComputationalBlock virtual_z_compensate(const ComputationalBlock& block) {
    const Phases t = accumulated_phases(block);
    const double phi1 = t[1] - t[0];
    const double phi2 = t[2] - t[0];
    Eigen::Vector4cd z;
    z << 1.0, std::polar(1.0, phi1), std::polar(1.0, phi2), std::polar(1.0, phi1 + phi2);
    ComputationalBlock out;
    out.u = std::polar(1.0, t[0]) * (z.asDiagonal() * block.u);
    return out;
}

double average_gate_fidelity(const ComputationalBlock& block) {
    const Eigen::Vector4d cz(1.0, 1.0, 1.0, -1.0);
    const Eigen::Matrix4cd m = cz.asDiagonal() * block.u;
    const double tr_mm = (m * m.adjoint()).trace().real();
    return (tr_mm + std::norm(m.trace())) / 20.0;
}

GateReport gate_report(const ComputationalBlock& block) {
    GateReport r;
    r.theta = accumulated_phases(block);
    r.cond_phase = conditional_phase(r.theta);
    r.phase_error = phase_error(r.cond_phase);
    r.leakage = leakage(block);
    r.fidelity = average_gate_fidelity(virtual_z_compensate(block));
    for (int k = 0; k < 4; ++k) r.return_populations[k] = std::norm(block.u(k, k));
    return r;
}

ComputationalBlock simulate_block(const DeviceParams& device, const PulseParams& pulse,
                                  const EvolutionSettings& settings) {
    const DressedSpectrum spectrum = static_spectrum(device, labels_up_to(device, 2));
    const Eigen::MatrixXcd p = spectrum.computational_vectors();
    const Eigen::MatrixXcd evolved = evolve_states(device, pulse, settings, p);
    return block_from_evolved(p, evolved);
}

GateReport simulate_gate(const DeviceParams& device, const PulseParams& pulse,
                         const EvolutionSettings& settings) {
    return gate_report(simulate_block(device, pulse, settings));
}

double cost(const GateReport& report) {
    return report.phase_error * report.phase_error + report.leakage;
}

double cost(const DeviceParams& device, double t_f, double detuning, double amp0, double lambda1,
            double lambda2, const EvolutionSettings& settings) {
    PulseParams p{amp0, lambda1, lambda2, t_f, detuning, std::nullopt};
    try {
        return cost(simulate_gate(device, p, settings));
    } catch (const AmbiguousLabeling&) {
        return kFailedCost;
    } catch (const IntegrationFailure&) {
        return kFailedCost;
    } catch (const PhaseUndefined&) {
        return kFailedCost;
    }
}

}  // namespace czsim
