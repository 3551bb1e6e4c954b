#include "czsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "czsim/errors.hpp"
#include "czsim/parallel.hpp"

namespace czsim {

namespace {

constexpr double kGhzToKhz = 1.0e6;
constexpr double kGhzToMhz = 1.0e3;

double nonzero(double x, const char* what) {
    if (std::abs(x) < 1e-12) {
        throw SingularConfiguration(std::string("vanishing denominator: ") + what);
    }
    return x;
}

void require_unambiguous(const DressedSpectrum& spectrum, std::span<const BasisLabel> labels) {
    std::vector<std::string> bad;
    if (labels.empty()) {
        for (const auto& l : spectrum.ambiguous_labels()) bad.push_back(l.str());
    } else {
        for (const auto& l : labels) {
            try {
                spectrum.state(l);
            } catch (const AmbiguousLabeling&) {
                bad.push_back(l.str());
            }
        }
    }
    if (!bad.empty()) {
        std::string msg = "ambiguous dressed labeling for";
        for (const auto& b : bad) msg += " |" + b + ">";
        throw AmbiguousLabeling(msg, bad);
    }
}

}  // namespace

DressedSpectrum::DressedSpectrum(DeviceParams device, std::vector<DressedState> entries)
    : device_(device), entries_(std::move(entries)), by_label_(device_.dimension(), -1) {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        by_label_[flat_index(entries_[k].label, device_)] = static_cast<int>(k);
    }
}

const DressedState& DressedSpectrum::state(const BasisLabel& label) const {
    const int k = by_label_[flat_index(label, device_)];
    if (k < 0) {
        throw AmbiguousLabeling("no dressed state for |" + label.str() + ">", {label.str()});
    }
    const DressedState& s = entries_[k];
    if (s.overlap < kLabelOverlapThreshold) {
        throw AmbiguousLabeling("ambiguous dressed labeling for |" + label.str() + ">",
                                {label.str()});
    }
    return s;
}

std::vector<BasisLabel> DressedSpectrum::ambiguous_labels() const {
    std::vector<BasisLabel> out;
    for (const auto& s : entries_) {
        if (s.overlap < kLabelOverlapThreshold) out.push_back(s.label);
    }
    return out;
}

Eigen::MatrixXcd DressedSpectrum::computational_vectors() const {
    const int d = device_.dimension();
    Eigen::MatrixXcd p(d, 4);
    const auto labels = computational_labels();
    for (int j = 0; j < 4; ++j) p.col(j) = state(labels[j]).vector;
    return p;
}

DressedSpectrum dressed_spectrum(const OperatorMatrix& h, const DeviceParams& device,
                                 std::span<const BasisLabel> required) {
    const int d = device.dimension();
    if (h.rows() != d || h.cols() != d) {
        throw InvalidArgument("dressed_spectrum: Hamiltonian dimension does not match device");
    }
    const Eigen::MatrixXcd dense = h;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success) {
        throw Error("dressed_spectrum: eigen-decomposition failed");
    }
    const Eigen::VectorXd& energies = solver.eigenvalues();
    const Eigen::MatrixXcd& vecs = solver.eigenvectors();
    const Eigen::MatrixXd overlap = vecs.cwiseAbs2();  // (bare, eigen)

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> best(d);
    for (int k = 0; k < d; ++k) best[k] = overlap.col(k).maxCoeff();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return best[a] > best[b]; });

    std::vector<bool> claimed(d, false);
    std::vector<int> assigned(d, -1);
    for (int k : order) {
        int pick = -1;
        for (int b = 0; b < d; ++b) {
            if (!claimed[b] && (pick < 0 || overlap(b, k) > overlap(pick, k))) pick = b;
        }
        claimed[pick] = true;
        assigned[k] = pick;
    }

    std::vector<DressedState> entries;
    entries.reserve(d);
    for (int k = 0; k < d; ++k) {
        const int b = assigned[k];
        Eigen::VectorXcd v = vecs.col(k);
        // Fix the gauge: the component on the assigned bare state is real positive.
        const Complex c = v(b);
        if (std::abs(c) > 0.0) v *= std::conj(c) / std::abs(c);
        entries.push_back({label_of(b, device), energies(k), overlap(b, k), std::move(v)});
    }
    DressedSpectrum spectrum(device, std::move(entries));
    require_unambiguous(spectrum, required);
    return spectrum;
}

DressedSpectrum static_spectrum(const DeviceParams& device, std::span<const BasisLabel> required) {
    return dressed_spectrum(build_static_hamiltonian(device), device, required);
}

double zz_from_spectrum(const DressedSpectrum& s) {
    const double zeta = s.energy({1, 0, 1}) - s.energy({0, 0, 1}) - s.energy({1, 0, 0}) +
                        s.energy({0, 0, 0});
    return zeta / kTwoPi * kGhzToKhz;
}

std::vector<BasisLabel> labels_up_to(const DeviceParams& device, int max_excitations) {
    std::vector<BasisLabel> out;
    for (int i = 0; i < device.dimension(); ++i) {
        const BasisLabel l = label_of(i, device);
        if (l.n1 + l.nc + l.n2 <= max_excitations) out.push_back(l);
    }
    return out;
}

double zz_exact(const DeviceParams& device) {
    device.validate();
    if (device.g1c == 0.0 || device.g2c == 0.0) return 0.0;
    return zz_from_spectrum(static_spectrum(device, labels_up_to(device, 2)));
}

double zz_perturbative(const DeviceParams& device) {
    device.validate();
    const double d1 = device.q1.frequency - device.coupler.frequency;
    const double d2 = device.q2.frequency - device.coupler.frequency;
    const double d12 = device.q1.frequency - device.q2.frequency;
    const double a1 = device.q1.anharmonicity;
    const double a2 = device.q2.anharmonicity;
    const double ac = device.coupler.anharmonicity;

    nonzero(d1, "w1 - wc");
    nonzero(d2, "w2 - wc");
    const double t1 = 1.0 / (d1 * d1 * nonzero(d12 - a2, "D12 - a2"));
    const double t2 = 1.0 / (d2 * d2 * nonzero(d12 + a1, "D12 + a1"));
    const double inv_sum = 1.0 / d1 + 1.0 / d2;
    const double t3 = inv_sum * inv_sum / nonzero(d1 + d2 - ac, "D1 + D2 - ac");

    const double g2 = device.g1c * device.g1c * device.g2c * device.g2c;
    return 2.0 * g2 * (t1 - t2 + t3) * kGhzToKhz;
}

double effective_J(const DeviceParams& device) {
    device.validate();
    const double d1 = nonzero(device.q1.frequency - device.coupler.frequency, "w1 - wc");
    const double d2 = nonzero(device.q2.frequency - device.coupler.frequency, "w2 - wc");
    return 0.5 * device.g1c * device.g2c * (1.0 / d1 + 1.0 / d2) * kGhzToMhz;
}

ZZReport zz_report(const DeviceParams& device) {
    ZZReport r;
    r.zeta_exact_khz = zz_exact(device);
    r.zeta_pert4_khz = zz_perturbative(device);
    r.j_eff_mhz = effective_J(device);
    r.delta1_ghz = device.q1.frequency - device.coupler.frequency;
    r.delta2_ghz = device.q2.frequency - device.coupler.frequency;
    r.delta12_ghz = device.q1.frequency - device.q2.frequency;
    return r;
}

ChiReport coupler_transitions(const DressedSpectrum& s) {
    ChiReport r;
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            r.omega_c[m][n] = (s.energy({m, 1, n}) - s.energy({m, 0, n})) / kTwoPi;
        }
    }
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            r.chi[m][n] = (m == 0 && n == 0)
                              ? 0.0
                              : (r.omega_c[m][n] - r.omega_c[0][0]) * kGhzToMhz;
        }
    }
    return r;
}

ChiReport coupler_transitions(const DeviceParams& device) {
    const std::array<BasisLabel, 8> needed{BasisLabel{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0},
                                           {0, 0, 1},           {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
    return coupler_transitions(static_spectrum(device, needed));
}

std::vector<ZZSweepRow> zz_sweep(const DeviceParams& device_template,
                                 std::span<const double> omega1_grid,
                                 std::span<const double> omega2_grid) {
    if (omega1_grid.empty() || omega2_grid.empty()) {
        throw InvalidArgument("zz_sweep: grids must be nonempty");
    }
    const std::size_t n2 = omega2_grid.size();
    return parallel_map<ZZSweepRow>(omega1_grid.size() * n2, [&](std::size_t i) {
        ZZSweepRow row;
        row.omega1 = omega1_grid[i / n2];
        row.omega2 = omega2_grid[i % n2];
        DeviceParams d = device_template;
        d.q1.frequency = row.omega1;
        d.q2.frequency = row.omega2;
        try {
            row.zeta_exact_khz = zz_exact(d);
            row.ok = true;
        } catch (const AmbiguousLabeling&) {
        }
        try {
            row.zeta_pert4_khz = zz_perturbative(d);
            row.pert_ok = true;
        } catch (const SingularConfiguration&) {
        }
        return row;
    });
}

std::vector<ChiSweepRow> chi_sweep(const DeviceParams& device_template,
                                   std::span<const double> g_grid) {
    if (g_grid.empty()) throw InvalidArgument("chi_sweep: grid must be nonempty");
    return parallel_map<ChiSweepRow>(g_grid.size(), [&](std::size_t i) {
        ChiSweepRow row;
        row.g = g_grid[i];
        DeviceParams d = device_template;
        d.g1c = d.g2c = row.g;
        try {
            row.chi = coupler_transitions(d);
            row.ok = true;
        } catch (const AmbiguousLabeling&) {
        }
        return row;
    });
}

}  // namespace czsim
