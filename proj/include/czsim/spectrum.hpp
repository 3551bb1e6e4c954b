#pragma once

#include <array>
#include <span>
#include <vector>

#include "czsim/device.hpp"

namespace czsim {

inline constexpr double kLabelOverlapThreshold = 0.5;

struct DressedState {
    BasisLabel label;
    double energy = 0.0;   ///< rad/ns
    double overlap = 0.0;  ///< |<bare|eigvec>|^2 for the assigned bare state
    Eigen::VectorXcd vector;
};

/// Eigenpairs of a Hamiltonian, each tagged with the bare state it overlaps most.
/// Entries are stored in the ascending order of the raw eigen-decomposition.
class DressedSpectrum {
public:
    DressedSpectrum(DeviceParams device, std::vector<DressedState> entries);

    const std::vector<DressedState>& entries() const noexcept { return entries_; }
    const DeviceParams& device() const noexcept { return device_; }

    /// Throws AmbiguousLabeling if the assignment for `label` is below threshold.
    const DressedState& state(const BasisLabel& label) const;
    double energy(const BasisLabel& label) const { return state(label).energy; }

    /// Labels whose assigned overlap is below the threshold.
    std::vector<BasisLabel> ambiguous_labels() const;

    /// Columns are the dressed computational states |00>, |10>, |01>, |11>.
    Eigen::MatrixXcd computational_vectors() const;

private:
    DeviceParams device_;
    std::vector<DressedState> entries_;
    std::vector<int> by_label_;  // flat bare index -> entry
};

/// Full diagonalisation with greedy max-overlap labeling: eigenvectors are visited in
/// descending order of their best overlap and take their best unclaimed bare label.
/// `required` lists the labels that must be unambiguous; empty means every label.
DressedSpectrum dressed_spectrum(const OperatorMatrix& h, const DeviceParams& device,
                                 std::span<const BasisLabel> required = {});

DressedSpectrum static_spectrum(const DeviceParams& device,
                                std::span<const BasisLabel> required = {});

/// Bare labels with n1 + nc + n2 <= max_excitations, in flat-index order.
std::vector<BasisLabel> labels_up_to(const DeviceParams& device, int max_excitations);

/// (E101 - E001 - E100 + E000)/2pi in kHz from exact diagonalisation. Every label
/// with at most two excitations must be unambiguous. Exactly 0 if either coupling is 0.
double zz_exact(const DeviceParams& device);
double zz_from_spectrum(const DressedSpectrum& spectrum);

/// Fourth-order closed form in kHz. Throws SingularConfiguration on a vanishing
/// denominator.
double zz_perturbative(const DeviceParams& device);

/// Effective exchange g1c g2c / 2 (1/D1 + 1/D2) in MHz.
double effective_J(const DeviceParams& device);

struct ZZReport {
    double zeta_exact_khz = 0.0;
    double zeta_pert4_khz = 0.0;
    double j_eff_mhz = 0.0;
    double delta1_ghz = 0.0;   ///< w1 - wc
    double delta2_ghz = 0.0;   ///< w2 - wc
    double delta12_ghz = 0.0;  ///< w1 - w2
};

ZZReport zz_report(const DeviceParams& device);

struct ChiReport {
    /// omega_c,mn/2pi in GHz, indexed [m][n].
    std::array<std::array<double, 2>, 2> omega_c{};
    /// omega_c,mn - omega_c,00 in MHz.
    std::array<std::array<double, 2>, 2> chi{};
};

ChiReport coupler_transitions(const DeviceParams& device);
ChiReport coupler_transitions(const DressedSpectrum& spectrum);

struct ZZSweepRow {
    double omega1 = 0.0;
    double omega2 = 0.0;
    bool ok = false;
    double zeta_exact_khz = 0.0;
    double zeta_pert4_khz = 0.0;
    bool pert_ok = false;
};

/// Long-format grid, omega1-major. Cells that cannot be labeled are flagged, not thrown.
std::vector<ZZSweepRow> zz_sweep(const DeviceParams& device_template,
                                 std::span<const double> omega1_grid,
                                 std::span<const double> omega2_grid);

struct ChiSweepRow {
    double g = 0.0;  ///< GHz, applied to both couplings
    bool ok = false;
    ChiReport chi;
};

std::vector<ChiSweepRow> chi_sweep(const DeviceParams& device_template,
                                   std::span<const double> g_grid);

}  // namespace czsim
