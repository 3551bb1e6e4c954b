#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace czsim {

using Complex = std::complex<double>;

// Dense complex operator on the truncated product space. Row-major storage so
// that the flat layout matches the (q1, coupler, q2) basis ordering.
using OperatorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// One Duffing-oscillator mode. Frequencies are omega/2pi in GHz.
struct TransmonParams {
    double frequency = 0.0;
    double anharmonicity = 0.0;
    int levels = 4;
};

/// Qubit 1, coupler, qubit 2 and the two qubit-coupler exchange couplings (GHz).
struct DeviceParams {
    TransmonParams q1;
    TransmonParams coupler;
    TransmonParams q2;
    double g1c = 0.0;
    double g2c = 0.0;

    int dimension() const noexcept { return q1.levels * coupler.levels * q2.levels; }

    /// Throws InvalidArgument when levels < 2, a coupling is negative or a value is not finite.
    void validate() const;
};

enum class Slot { q1, coupler, q2 };

/// Occupation triple |n1 nc n2>. Flat index is q1-major, q2-minor:
/// index = (n1 * Lc + nc) * L2 + n2.
struct BasisLabel {
    int n1 = 0;
    int nc = 0;
    int n2 = 0;

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;

    std::string str() const;
    /// Parses "101" or "1,0,1". Throws InvalidArgument.
    static BasisLabel parse(std::string_view text);
};

int flat_index(const BasisLabel& label, const DeviceParams& device);
BasisLabel label_of(int index, const DeviceParams& device);

/// The four computational states in block order |00>, |10>, |01>, |11>.
std::array<BasisLabel, 4> computational_labels();

/// <n-1|a|n> = sqrt(n). Throws InvalidArgument for levels < 2.
OperatorMatrix lowering_operator(int levels);

/// op acting on `slot`, identity on the other two factors.
OperatorMatrix embed(const OperatorMatrix& op, Slot slot, const DeviceParams& device);

/// Undriven Hamiltonian in rad/ns:
/// sum_l (w_l n_l + a_l/2 n_l(n_l-1)) + sum_{l=1,2} g_lc (a_l^dag a_c + h.c.).
OperatorMatrix build_static_hamiltonian(const DeviceParams& device);

struct RotatingHamiltonian {
    OperatorMatrix static_part;  ///< rad/ns, frame rotating at the drive frequency
    OperatorMatrix drive_op;     ///< a_c + a_c^dag (dimensionless)
};

/// Drive-frame Hamiltonian; the full generator is static_part + (Omega(t)/2) drive_op
/// with Omega in rad/ns.
RotatingHamiltonian build_rotating_hamiltonian(const DeviceParams& device, double drive_freq);

/// Total excitation number sum_l a_l^dag a_l.
OperatorMatrix total_number_operator(const DeviceParams& device);

double max_hermiticity_defect(const OperatorMatrix& h);

/// Named parameter sets: "paper-tableI", "paper-tableIII".
DeviceParams device_preset(std::string_view name);
std::vector<std::string> device_preset_names();

/// Exchange q1 and q2 (and their couplings).
DeviceParams swapped_qubits(const DeviceParams& device);

}  // namespace czsim
