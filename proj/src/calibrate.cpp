#include "czsim/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "czsim/errors.hpp"
#include "czsim/parallel.hpp"

namespace czsim {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
constexpr double kZeroStep = 2.5e-4;

class Objective {
public:
    Objective(const DeviceParams& device, double t_f, double detuning, const OptimizeSettings& s)
        : device_(device), t_f_(t_f), detuning_(detuning), settings_(s) {}

    double operator()(const PulseShape& x) {
        ++evaluations_;
        PulseParams p{x[0], x[1], x[2], t_f_, detuning_, std::nullopt};
        double value = kFailedCost;
        GateReport report;
        try {
            report = simulate_gate(device_, p, settings_.evolution);
            value = cost(report);
        } catch (const AmbiguousLabeling&) {
        } catch (const IntegrationFailure&) {
        } catch (const PhaseUndefined&) {
        }
        if (!std::isfinite(value)) value = kFailedCost;
        if (value < best_cost_) {
            best_cost_ = value;
            best_x_ = x;
            best_report_ = report;
        }
        history_.push_back(best_cost_);
        return value;
    }

    bool exhausted() const { return evaluations_ >= settings_.max_evals; }
    bool satisfied() const { return best_cost_ <= settings_.cost_tol; }

    int evaluations_ = 0;
    double best_cost_ = kFailedCost * 2.0;
    PulseShape best_x_{};
    GateReport best_report_;
    std::vector<double> history_;

private:
    const DeviceParams& device_;
    double t_f_;
    double detuning_;
    const OptimizeSettings& settings_;
};

PulseShape combine(const PulseShape& a, const PulseShape& b, double t) {
    // a + t (b - a)
    PulseShape out{};
    for (int i = 0; i < 3; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
}

bool collapsed(const std::array<PulseShape, 4>& pts, const std::array<double, 4>& f) {
    double dx = 0.0;
    double df = 0.0;
    for (int v = 1; v < 4; ++v) {
        for (int i = 0; i < 3; ++i) {
            dx = std::max(dx, std::abs(pts[v][i] - pts[0][i]) / (1.0 + std::abs(pts[0][i])));
        }
        df = std::max(df, std::abs(f[v] - f[0]));
    }
    return dx < 1e-10 && df < 1e-14;
}

SweepRow evaluate_fixed(const DeviceParams& device, double t_g, double detuning,
                        const SweepMode& mode) {
    SweepRow row;
    row.t_g = t_g;
    row.detuning = detuning;
    PulseParams p = mode.pulse;
    p.t_f = t_g;
    p.detuning = detuning;
    p.drive_freq.reset();
    row.amp0 = p.amp0;
    row.lambda1 = p.lambda1;
    row.lambda2 = p.lambda2;
    try {
        const GateReport r = simulate_gate(device, p, mode.evolution);
        row.leakage = r.leakage;
        row.phase_error = r.phase_error;
        row.infidelity = 1.0 - r.fidelity;
        row.ok = true;
    } catch (const Error&) {
    }
    return row;
}

SweepRow evaluate_optimized(const DeviceParams& device, double t_g, double detuning,
                            const SweepMode& mode) {
    SweepRow row;
    row.t_g = t_g;
    row.detuning = detuning;
    try {
        const OptimizeResult r = optimize_pulse(device, t_g, detuning, mode.optimize);
        row.amp0 = r.pulse.amp0;
        row.lambda1 = r.pulse.lambda1;
        row.lambda2 = r.pulse.lambda2;
        if (r.cost < kFailedCost) {
            row.leakage = r.report.leakage;
            row.phase_error = r.report.phase_error;
            row.infidelity = 1.0 - r.report.fidelity;
            row.ok = true;
        }
    } catch (const Error&) {
    }
    return row;
}

SweepRow evaluate_cell(const DeviceParams& device, double t_g, double detuning,
                       const SweepMode& mode) {
    return mode.kind == SweepMode::Kind::fixed_pulse ? evaluate_fixed(device, t_g, detuning, mode)
                                                     : evaluate_optimized(device, t_g, detuning, mode);
}

}  // namespace

void OptimizeSettings::validate() const {
    if (max_evals < 10) throw InvalidArgument("max_evals must be >= 10");
    if (!(simplex_scale > 0.0)) throw InvalidArgument("simplex_scale must be > 0");
    if (!(cost_tol >= 0.0)) throw InvalidArgument("cost_tol must be >= 0");
}

PulseShape default_initial_point(double t_f) {
    if (!(t_f > 0.0)) throw InvalidArgument("t_f must be > 0");
    constexpr double lambda1 = 0.3;
    constexpr double lambda2 = 0.1;
    // The cosine terms integrate to zero, so the area is Omega0 t_f (1 - lambda2) / 2;
    // setting 2pi * area = 2pi gives Omega0/2pi below.
    const double amp0 = 2.0 / (t_f * (1.0 - lambda2));
    return {amp0, lambda1, lambda2};
}

OptimizeResult optimize_pulse(const DeviceParams& device, double t_f, double detuning,
                              const OptimizeSettings& settings) {
    settings.validate();
    device.validate();
    const PulseShape x0 = settings.initial.value_or(default_initial_point(t_f));

    Objective f(device, t_f, detuning, settings);
    std::array<PulseShape, 4> pts{x0, x0, x0, x0};
    for (int i = 0; i < 3; ++i) {
        const double step = x0[i] != 0.0 ? settings.simplex_scale * x0[i] : kZeroStep;
        pts[i + 1][i] += step;
    }
    std::array<double, 4> val{};
    std::string reason = "max_evals";
    int filled = 0;
    for (; filled < 4 && !f.exhausted(); ++filled) val[filled] = f(pts[filled]);

    while (filled == 4) {
        if (f.satisfied()) {
            reason = "cost_tol";
            break;
        }
        if (f.exhausted()) break;

        std::array<int, 4> idx{0, 1, 2, 3};
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return val[a] < val[b]; });
        std::array<PulseShape, 4> sp;
        std::array<double, 4> sv;
        for (int k = 0; k < 4; ++k) {
            sp[k] = pts[idx[k]];
            sv[k] = val[idx[k]];
        }
        pts = sp;
        val = sv;
        if (collapsed(pts, val)) {
            reason = "simplex_collapsed";
            break;
        }

        PulseShape centroid{};
        for (int v = 0; v < 3; ++v) {
            for (int i = 0; i < 3; ++i) centroid[i] += pts[v][i] / 3.0;
        }

        const PulseShape xr = combine(centroid, pts[3], -kReflect);
        const double fr = f(xr);
        if (fr < val[0]) {
            if (f.exhausted()) {
                pts[3] = xr;
                val[3] = fr;
                continue;
            }
            const PulseShape xe = combine(centroid, pts[3], -kReflect * kExpand);
            const double fe = f(xe);
            if (fe < fr) {
                pts[3] = xe;
                val[3] = fe;
            } else {
                pts[3] = xr;
                val[3] = fr;
            }
            continue;
        }
        if (fr < val[2]) {
            pts[3] = xr;
            val[3] = fr;
            continue;
        }
        if (f.exhausted()) continue;

        const bool outside = fr < val[3];
        const PulseShape xc = outside ? combine(centroid, xr, kContract)
                                      : combine(centroid, pts[3], kContract);
        const double fc = f(xc);
        if (fc < (outside ? fr : val[3])) {
            pts[3] = xc;
            val[3] = fc;
            continue;
        }
        for (int v = 1; v < 4 && !f.exhausted(); ++v) {
            pts[v] = combine(pts[0], pts[v], kShrink);
            val[v] = f(pts[v]);
        }
    }
    if (f.satisfied()) reason = "cost_tol";

    OptimizeResult result;
    result.pulse = PulseParams{f.best_x_[0], f.best_x_[1], f.best_x_[2], t_f, detuning, std::nullopt};
    if (f.best_cost_ < kFailedCost) result.pulse = resolved(device, result.pulse);
    result.report = f.best_report_;
    result.cost = std::min(f.best_cost_, kFailedCost);
    result.evaluations = f.evaluations_;
    result.converged = f.satisfied();
    result.stop_reason = reason;
    result.best_history = std::move(f.history_);
    return result;
}

SweepMode SweepMode::fixed(const PulseParams& pulse, const EvolutionSettings& evolution) {
    SweepMode m;
    m.kind = Kind::fixed_pulse;
    m.pulse = pulse;
    m.evolution = evolution;
    return m;
}

SweepMode SweepMode::optimizing(const OptimizeSettings& settings) {
    SweepMode m;
    m.kind = Kind::optimize;
    m.optimize = settings;
    return m;
}

SweepResult sweep_detuning(const DeviceParams& device, double t_f,
                           std::span<const double> detuning_grid, const SweepMode& mode) {
    const std::array<double, 1> tg{t_f};
    return sweep_2d(device, tg, detuning_grid, mode);
}

SweepResult sweep_2d(const DeviceParams& device, std::span<const double> t_g_grid,
                     std::span<const double> detuning_grid, const SweepMode& mode) {
    if (t_g_grid.empty() || detuning_grid.empty()) {
        throw InvalidArgument("sweep grids must be nonempty");
    }
    device.validate();
    const std::size_t nd = detuning_grid.size();
    return parallel_map<SweepRow>(t_g_grid.size() * nd, [&](std::size_t i) {
        return evaluate_cell(device, t_g_grid[i / nd], detuning_grid[i % nd], mode);
    });
}

}  // namespace czsim
