#include "czsim/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "czsim/errors.hpp"
#include "czsim/spectrum.hpp"

namespace czsim {

namespace {

constexpr double kMaxStepPhase = 0.5;
constexpr double kTaylorTolerance = 1e-18;
constexpr double kUnitarityFailure = 1e-6;

// Generator H(c) = static + c * drive held in one CSR pattern with real entries.
// The drive-frame generator with zero drive phase is real symmetric; this relies on it.
class MidpointStepper {
public:
    explicit MidpointStepper(const RotatingHamiltonian& h) : dim_(static_cast<int>(h.static_part.rows())) {
        const double imag = std::max(h.static_part.imag().cwiseAbs().maxCoeff(),
                                     h.drive_op.imag().cwiseAbs().maxCoeff());
        if (imag > 0.0) {
            throw InvalidArgument("propagator expects a real generator (zero drive phase)");
        }
        double lo = h.static_part(0, 0).real();
        double hi = lo;
        for (int i = 0; i < dim_; ++i) {
            lo = std::min(lo, h.static_part(i, i).real());
            hi = std::max(hi, h.static_part(i, i).real());
        }
        shift_ = 0.5 * (lo + hi);

        row_ptr_.push_back(0);
        static_bound_.assign(dim_, 0.0);
        drive_bound_.assign(dim_, 0.0);
        for (int r = 0; r < dim_; ++r) {
            for (int c = 0; c < dim_; ++c) {
                double s = h.static_part(r, c).real();
                const double d = h.drive_op(r, c).real();
                if (r == c) s -= shift_;
                if (s == 0.0 && d == 0.0) continue;
                col_.push_back(c);
                static_val_.push_back(s);
                drive_val_.push_back(d);
                static_bound_[r] += std::abs(s);
                drive_bound_[r] += std::abs(d);
            }
            row_ptr_.push_back(static_cast<int>(col_.size()));
        }
        val_.resize(col_.size());
    }

    // state <- exp(-i H(c) dt) state
    void step(double c, double dt, Eigen::MatrixXcd& state) {
        for (std::size_t k = 0; k < val_.size(); ++k) val_[k] = static_val_[k] + c * drive_val_[k];
        double bound = 0.0;
        for (int r = 0; r < dim_; ++r) {
            bound = std::max(bound, static_bound_[r] + std::abs(c) * drive_bound_[r]);
        }
        const int substeps = std::max(1, static_cast<int>(std::ceil(bound * dt / kMaxStepPhase)));
        const double h = dt / substeps;
        const double theta = bound * h;
        int terms = 1;
        for (double err = theta; err > kTaylorTolerance && terms < 40; ++terms) {
            err *= theta / (terms + 1);
        }

        term_.resize(state.rows(), state.cols());
        next_.resize(state.rows(), state.cols());
        const Complex global = std::polar(1.0, -shift_ * h);
        for (int s = 0; s < substeps; ++s) {
            term_ = state;
            for (int k = 1; k <= terms; ++k) {
                apply(term_, next_, h / k);
                state += next_;
                term_.swap(next_);
            }
            state *= global;
        }
    }

private:
    // out = (-i f) H in
    void apply(const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out, double f) const {
        const Eigen::Index cols = in.cols();
        for (Eigen::Index j = 0; j < cols; ++j) {
            const Complex* x = in.col(j).data();
            Complex* y = out.col(j).data();
            for (int r = 0; r < dim_; ++r) {
                double re = 0.0;
                double im = 0.0;
                for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
                    const Complex v = x[col_[k]];
                    re += val_[k] * v.real();
                    im += val_[k] * v.imag();
                }
                y[r] = Complex(f * im, -f * re);
            }
        }
    }

    int dim_;
    double shift_ = 0.0;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<double> static_val_;
    std::vector<double> drive_val_;
    std::vector<double> val_;
    std::vector<double> static_bound_;
    std::vector<double> drive_bound_;
    Eigen::MatrixXcd term_;
    Eigen::MatrixXcd next_;
};

PulseParams with_drive(const DeviceParams& device, const PulseParams& pulse) {
    pulse.validate();
    return pulse.drive_freq ? pulse : resolved(device, pulse);
}

double gram_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a.adjoint() * a - b.adjoint() * b).cwiseAbs().maxCoeff();
}

// Drives the time loop; `observe(step_index, state)` runs after each completed step.
template <typename Observer>
Eigen::MatrixXcd run(const DeviceParams& device, const PulseParams& pulse,
                     const EvolutionSettings& settings, const Eigen::MatrixXcd& initial,
                     long first_step, long last_step, Observer&& observe) {
    device.validate();
    const PulseParams p = with_drive(device, pulse);
    settings.validate(p.t_f);
    if (initial.rows() != device.dimension()) {
        throw InvalidArgument("initial states have the wrong dimension");
    }
    const long n = settings.steps(p.t_f);
    if (first_step < 0 || last_step > n || first_step > last_step) {
        throw InvalidArgument("step window outside the gate grid");
    }
    const double h = p.t_f / static_cast<double>(n);

    MidpointStepper stepper(build_rotating_hamiltonian(device, *p.drive_freq));
    Eigen::MatrixXcd state = initial;
    for (long k = first_step; k < last_step; ++k) {
        const double t_mid = std::min((static_cast<double>(k) + 0.5) * h, p.t_f);
        const double coef = 0.5 * kTwoPi * envelope(p, t_mid);
        stepper.step(coef, h, state);
        observe(k + 1, state);
    }
    if (gram_defect(state, initial) > kUnitarityFailure) {
        throw IntegrationFailure("propagation lost unitarity; reduce dt");
    }
    return state;
}

}  // namespace

void EvolutionSettings::validate(double t_f) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
    if (sample_stride < 1) throw InvalidArgument("sample_stride must be >= 1");
    if (t_f / dt < 10.0) throw InvalidArgument("t_f/dt must be >= 10");
}

long EvolutionSettings::steps(double t_f) const {
    return std::max(1L, std::lround(t_f / dt));
}

std::vector<double> Trajectory::population(const BasisLabel& label) const {
    const int k = flat_index(label, device);
    std::vector<double> out(populations.rows());
    for (Eigen::Index i = 0; i < populations.rows(); ++i) out[i] = populations(i, k);
    return out;
}

Eigen::MatrixXcd evolve_states(const DeviceParams& device, const PulseParams& pulse,
                               const EvolutionSettings& settings, const Eigen::MatrixXcd& initial,
                               long first_step, long last_step) {
    return run(device, pulse, settings, initial, first_step, last_step,
               [](long, const Eigen::MatrixXcd&) {});
}

Eigen::MatrixXcd evolve_states(const DeviceParams& device, const PulseParams& pulse,
                               const EvolutionSettings& settings, const Eigen::MatrixXcd& initial) {
    settings.validate(pulse.t_f);
    return evolve_states(device, pulse, settings, initial, 0, settings.steps(pulse.t_f));
}

OperatorMatrix evolve_unitary(const DeviceParams& device, const PulseParams& pulse,
                              const EvolutionSettings& settings) {
    const int d = device.dimension();
    const Eigen::MatrixXcd u = evolve_states(device, pulse, settings, Eigen::MatrixXcd::Identity(d, d));
    return u;
}

Trajectory evolve_trajectory(const DeviceParams& device, const PulseParams& pulse,
                             const EvolutionSettings& settings, const BasisLabel& initial) {
    const std::array<BasisLabel, 1> needed{initial};
    const DressedSpectrum spectrum = static_spectrum(device, needed);
    const Eigen::MatrixXcd psi0 = spectrum.state(initial).vector;

    settings.validate(pulse.t_f);
    const long n = settings.steps(pulse.t_f);
    const double h = pulse.t_f / static_cast<double>(n);
    const long samples = n / settings.sample_stride + 1 + (n % settings.sample_stride != 0 ? 1 : 0);

    Trajectory traj;
    traj.device = device;
    traj.populations.resize(samples, device.dimension());
    std::array<int, 4> comp{};
    const auto labels = computational_labels();
    for (int j = 0; j < 4; ++j) comp[j] = flat_index(labels[j], device);

    auto record = [&](long step, const Eigen::MatrixXcd& state) {
        const auto row = static_cast<Eigen::Index>(traj.times.size());
        traj.populations.row(row) = state.col(0).cwiseAbs2().transpose();
        double inside = 0.0;
        for (int c : comp) inside += traj.populations(row, c);
        traj.times.push_back(static_cast<double>(step) * h);
        traj.leakage_trace.push_back(1.0 - inside);
    };
    record(0, psi0);
    run(device, pulse, settings, psi0, 0, n, [&](long step, const Eigen::MatrixXcd& state) {
        if (step % settings.sample_stride == 0 || step == n) record(step, state);
    });
    return traj;
}

double max_unitarity_defect(const OperatorMatrix& u) {
    const Eigen::MatrixXcd m = u;
    return (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

}  // namespace czsim
