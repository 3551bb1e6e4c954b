#include "czsim/device.hpp"

#include <cctype>
#include <cmath>

#include "czsim/errors.hpp"

namespace czsim {

namespace {

void check_transmon(const TransmonParams& t, const char* name) {
    if (t.levels < 2) {
        throw InvalidArgument(std::string(name) + ".levels must be >= 2");
    }
    if (!std::isfinite(t.frequency) || !std::isfinite(t.anharmonicity)) {
        throw InvalidArgument(std::string(name) + " frequency/anharmonicity must be finite");
    }
}

int levels_of(Slot slot, const DeviceParams& d) {
    switch (slot) {
        case Slot::q1: return d.q1.levels;
        case Slot::coupler: return d.coupler.levels;
        case Slot::q2: return d.q2.levels;
    }
    return 0;
}

OperatorMatrix identity(int n) { return OperatorMatrix::Identity(n, n); }

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Diagonal of w n + a/2 n(n-1) for a single mode, in GHz.
OperatorMatrix mode_energy(const TransmonParams& t, double frame) {
    OperatorMatrix h = OperatorMatrix::Zero(t.levels, t.levels);
    for (int n = 0; n < t.levels; ++n) {
        h(n, n) = (t.frequency - frame) * n + 0.5 * t.anharmonicity * n * (n - 1);
    }
    return h;
}

OperatorMatrix hamiltonian_in_frame(const DeviceParams& device, double frame) {
    device.validate();
    const OperatorMatrix a1 = embed(lowering_operator(device.q1.levels), Slot::q1, device);
    const OperatorMatrix ac = embed(lowering_operator(device.coupler.levels), Slot::coupler, device);
    const OperatorMatrix a2 = embed(lowering_operator(device.q2.levels), Slot::q2, device);

    OperatorMatrix h = embed(mode_energy(device.q1, frame), Slot::q1, device) +
                       embed(mode_energy(device.coupler, frame), Slot::coupler, device) +
                       embed(mode_energy(device.q2, frame), Slot::q2, device);
    h += device.g1c * (a1.adjoint() * ac + a1 * ac.adjoint());
    h += device.g2c * (a2.adjoint() * ac + a2 * ac.adjoint());
    return kTwoPi * h;
}

}  // namespace

void DeviceParams::validate() const {
    check_transmon(q1, "q1");
    check_transmon(coupler, "coupler");
    check_transmon(q2, "q2");
    if (!(g1c >= 0.0) || !(g2c >= 0.0) || !std::isfinite(g1c) || !std::isfinite(g2c)) {
        throw InvalidArgument("couplings g1c, g2c must be finite and non-negative");
    }
}

std::string BasisLabel::str() const {
    return std::to_string(n1) + std::to_string(nc) + std::to_string(n2);
}

BasisLabel BasisLabel::parse(std::string_view text) {
    std::vector<int> digits;
    for (char ch : text) {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch - '0');
        } else if (ch != ',' && ch != '|' && ch != '>' && ch != ' ') {
            throw InvalidArgument("bad basis label '" + std::string(text) + "'");
        }
    }
    if (digits.size() != 3) {
        throw InvalidArgument("basis label needs three occupations: '" + std::string(text) + "'");
    }
    return {digits[0], digits[1], digits[2]};
}

int flat_index(const BasisLabel& label, const DeviceParams& d) {
    if (label.n1 < 0 || label.n1 >= d.q1.levels || label.nc < 0 || label.nc >= d.coupler.levels ||
        label.n2 < 0 || label.n2 >= d.q2.levels) {
        throw InvalidArgument("basis label " + label.str() + " outside truncation");
    }
    return (label.n1 * d.coupler.levels + label.nc) * d.q2.levels + label.n2;
}

BasisLabel label_of(int index, const DeviceParams& d) {
    if (index < 0 || index >= d.dimension()) {
        throw InvalidArgument("flat index out of range");
    }
    const int n2 = index % d.q2.levels;
    const int rest = index / d.q2.levels;
    return {rest / d.coupler.levels, rest % d.coupler.levels, n2};
}

std::array<BasisLabel, 4> computational_labels() {
    return {BasisLabel{0, 0, 0}, BasisLabel{1, 0, 0}, BasisLabel{0, 0, 1}, BasisLabel{1, 0, 1}};
}

OperatorMatrix lowering_operator(int levels) {
    if (levels < 2) {
        throw InvalidArgument("lowering_operator: levels must be >= 2");
    }
    OperatorMatrix a = OperatorMatrix::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

OperatorMatrix embed(const OperatorMatrix& op, Slot slot, const DeviceParams& device) {
    const int n = levels_of(slot, device);
    if (op.rows() != n || op.cols() != n) {
        throw InvalidArgument("embed: operator dimension does not match slot levels");
    }
    const OperatorMatrix i1 = identity(device.q1.levels);
    const OperatorMatrix ic = identity(device.coupler.levels);
    const OperatorMatrix i2 = identity(device.q2.levels);
    switch (slot) {
        case Slot::q1: return kron(kron(op, ic), i2);
        case Slot::coupler: return kron(kron(i1, op), i2);
        case Slot::q2: return kron(kron(i1, ic), op);
    }
    throw InvalidArgument("embed: unknown slot");
}

OperatorMatrix build_static_hamiltonian(const DeviceParams& device) {
    return hamiltonian_in_frame(device, 0.0);
}

RotatingHamiltonian build_rotating_hamiltonian(const DeviceParams& device, double drive_freq) {
    if (!(drive_freq >= 0.0) || !std::isfinite(drive_freq)) {
        throw InvalidArgument("drive frequency must be finite and non-negative");
    }
    const OperatorMatrix ac = embed(lowering_operator(device.coupler.levels), Slot::coupler, device);
    return {hamiltonian_in_frame(device, drive_freq), ac + ac.adjoint()};
}

OperatorMatrix total_number_operator(const DeviceParams& device) {
    OperatorMatrix n = OperatorMatrix::Zero(device.dimension(), device.dimension());
    for (int k = 0; k < device.dimension(); ++k) {
        const BasisLabel l = label_of(k, device);
        n(k, k) = l.n1 + l.nc + l.n2;
    }
    return n;
}

double max_hermiticity_defect(const OperatorMatrix& h) {
    const double scale = h.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (h - h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

DeviceParams device_preset(std::string_view name) {
    if (name == "paper-tableI") {
        return {{6.5, -0.300, 4}, {5.5, -0.300, 4}, {4.5, -0.300, 4}, 0.080, 0.080};
    }
    if (name == "paper-tableIII") {
        return {{5.641, -0.300, 4}, {6.317, -0.303, 4}, {5.507, -0.381, 4}, 0.040, 0.031};
    }
    throw InvalidArgument("unknown device preset '" + std::string(name) + "'");
}

std::vector<std::string> device_preset_names() { return {"paper-tableI", "paper-tableIII"}; }

DeviceParams swapped_qubits(const DeviceParams& device) {
    DeviceParams s = device;
    std::swap(s.q1, s.q2);
    std::swap(s.g1c, s.g2c);
    return s;
}

}  // namespace czsim
