#include "czsim/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "czsim/calibrate.hpp"
#include "czsim/config.hpp"
#include "czsim/errors.hpp"
#include "czsim/metrics.hpp"
#include "czsim/propagator.hpp"
#include "czsim/spectrum.hpp"
#include "czsim/table.hpp"

namespace czsim::cli {

namespace {

struct Flags {
    std::string config;
    std::string device;
    std::string pulse;
    std::string dt;
    std::string stride;
    std::string out;
    std::string mode;
    std::string tg;
    std::string detuning;
    std::string omega1;
    std::string omega2;
    std::string g;
    std::string initial;
    std::string states;
    std::string max_evals;
};

struct Context {
    std::string command;
    KeyValueConfig cfg;
    std::ostream& out;
    std::ostream& err;
};

std::string printf_str(const char* fmt, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

std::string ok_field(bool ok, double x) { return ok ? format_number(x) : std::string(); }

KeyValueConfig build_config(const Flags& f) {
    KeyValueConfig cfg = f.config.empty() ? KeyValueConfig{} : KeyValueConfig::load(f.config);
    const std::pair<const char*, const std::string*> overrides[] = {
        {"device", &f.device}, {"pulse", &f.pulse},       {"dt_ns", &f.dt},
        {"sample_stride", &f.stride}, {"out", &f.out},    {"mode", &f.mode},
        {"tg", &f.tg},         {"detuning", &f.detuning}, {"omega1", &f.omega1},
        {"omega2", &f.omega2}, {"g", &f.g},               {"initial", &f.initial},
        {"states", &f.states}, {"max_evals", &f.max_evals}};
    for (const auto& [key, value] : overrides) {
        if (!value->empty()) cfg.set(key, *value);
    }
    return cfg;
}

std::string where(const KeyValueConfig& cfg, const std::string& key) {
    const int line = cfg.line_of(key);
    return line > 0 ? " (line " + std::to_string(line) + ")" : std::string(" (command line)");
}

std::vector<double> grid(const KeyValueConfig& cfg, const std::string& key) {
    const auto spec = cfg.text(key);
    if (!spec) throw ConfigError("missing grid '" + key + "'", key, 0);
    try {
        return parse_grid(*spec);
    } catch (const ConfigError& e) {
        throw ConfigError("key '" + key + "'" + where(cfg, key) + ": " + e.what(), key,
                          cfg.line_of(key));
    }
}

std::optional<double> single(const KeyValueConfig& cfg, const std::string& key) {
    if (!cfg.has(key)) return std::nullopt;
    const auto g = grid(cfg, key);
    if (g.size() != 1) {
        throw ConfigError("key '" + key + "'" + where(cfg, key) + ": expected a single value", key,
                          cfg.line_of(key));
    }
    return g.front();
}

std::vector<std::string> header(const Context& ctx) {
    std::vector<std::string> h{"czsim " + version(), "command = " + ctx.command};
    for (const char* key : {"device", "pulse", "mode", "tg", "detuning", "omega1", "omega2", "g",
                            "initial", "states", "max_evals", "cost_tol", "simplex_scale"}) {
        if (auto v = ctx.cfg.text(key)) h.push_back(std::string(key) + " = " + *v);
    }
    return h;
}

void append(std::vector<std::string>& h, const std::string& section,
            const std::vector<std::string>& lines) {
    for (const auto& l : lines) h.push_back(section + "." + l);
}

void emit(const Context& ctx, const CsvTable& table, const std::string& summary) {
    if (auto path = ctx.cfg.text("out")) {
        std::ofstream f(*path, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file '" + *path + "'", "out", ctx.cfg.line_of("out"));
        table.write(f);
        f.close();
        if (!f) throw ConfigError("failed writing '" + *path + "'", "out", ctx.cfg.line_of("out"));
        ctx.out << summary << '\n';
    } else {
        table.write(ctx.out);
        ctx.err << summary << '\n';
    }
}

int cmd_zz(Context& ctx) {
    const DeviceParams d = device_from_config(ctx.cfg);
    const ZZReport r = zz_report(d);
    CsvTable t({"zeta_exact_khz", "abs_zeta_exact_khz", "zeta_pert4_khz", "j_eff_mhz", "delta1_ghz",
                "delta2_ghz", "delta12_ghz"});
    auto h = header(ctx);
    append(h, "resolved", describe(d));
    t.comments(h);
    t.add_row({format_number(r.zeta_exact_khz), format_number(std::abs(r.zeta_exact_khz)),
               format_number(r.zeta_pert4_khz), format_number(r.j_eff_mhz),
               format_number(r.delta1_ghz), format_number(r.delta2_ghz),
               format_number(r.delta12_ghz)});
    emit(ctx, t,
         "zz: |zeta|/2pi = " + printf_str("%.4f", std::abs(r.zeta_exact_khz)) + " kHz (signed " +
             printf_str("%.4f", r.zeta_exact_khz) + "), zeta_pert4/2pi = " +
             printf_str("%.4f", r.zeta_pert4_khz) + " kHz, J/2pi = " +
             printf_str("%.4f", r.j_eff_mhz) + " MHz");
    return 0;
}

int cmd_zz_sweep(Context& ctx) {
    const DeviceParams d = device_from_config(ctx.cfg);
    const auto w1 = ctx.cfg.has("omega1") ? grid(ctx.cfg, "omega1") : std::vector{d.q1.frequency};
    const auto w2 = ctx.cfg.has("omega2") ? grid(ctx.cfg, "omega2") : std::vector{d.q2.frequency};
    const auto rows = zz_sweep(d, w1, w2);

    CsvTable t({"omega1_ghz", "omega2_ghz", "status", "zeta_exact_khz", "abs_zeta_exact_khz",
                "pert_status", "zeta_pert4_khz"});
    auto h = header(ctx);
    append(h, "template", describe(d));
    t.comments(h);
    int failed = 0;
    int crossings = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        failed += r.ok ? 0 : 1;
        if (i % w2.size() != 0 && r.ok && rows[i - 1].ok &&
            std::signbit(r.zeta_exact_khz) != std::signbit(rows[i - 1].zeta_exact_khz)) {
            ++crossings;
        }
        t.add_row({format_number(r.omega1), format_number(r.omega2), r.ok ? "ok" : "ambiguous",
                   ok_field(r.ok, r.zeta_exact_khz), ok_field(r.ok, std::abs(r.zeta_exact_khz)),
                   r.pert_ok ? "ok" : "singular", ok_field(r.pert_ok, r.zeta_pert4_khz)});
    }
    emit(ctx, t,
         "zz-sweep: " + std::to_string(rows.size()) + " cells, " + std::to_string(failed) +
             " unlabeled, " + std::to_string(crossings) + " sign changes of zeta_exact along omega2");
    return 0;
}

int cmd_chi_sweep(Context& ctx) {
    const DeviceParams d = device_from_config(ctx.cfg);
    const auto gs = ctx.cfg.has("g") ? grid(ctx.cfg, "g") : std::vector{d.g1c};
    const auto rows = chi_sweep(d, gs);
    CsvTable t({"g_ghz", "status", "omega_c00_ghz", "omega_c10_ghz", "omega_c01_ghz",
                "omega_c11_ghz", "chi10_mhz", "chi01_mhz", "chi11_mhz"});
    auto h = header(ctx);
    append(h, "template", describe(d));
    t.comments(h);
    int failed = 0;
    for (const auto& r : rows) {
        failed += r.ok ? 0 : 1;
        const auto& w = r.chi.omega_c;
        const auto& c = r.chi.chi;
        t.add_row({format_number(r.g), r.ok ? "ok" : "ambiguous", ok_field(r.ok, w[0][0]),
                   ok_field(r.ok, w[1][0]), ok_field(r.ok, w[0][1]), ok_field(r.ok, w[1][1]),
                   ok_field(r.ok, c[1][0]), ok_field(r.ok, c[0][1]), ok_field(r.ok, c[1][1])});
    }
    emit(ctx, t,
         "chi-sweep: " + std::to_string(rows.size()) + " couplings, " + std::to_string(failed) +
             " unlabeled");
    return 0;
}

std::vector<BasisLabel> parse_states(const std::string& spec) {
    std::vector<BasisLabel> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(BasisLabel::parse(tok));
    }
    if (out.empty()) throw ConfigError("states list is empty", "states", 0);
    return out;
}

BasisLabel label_key(const KeyValueConfig& cfg, const std::string& key, const char* fallback) {
    const std::string text = cfg.text(key).value_or(fallback);
    try {
        return BasisLabel::parse(text);
    } catch (const InvalidArgument& e) {
        throw ConfigError("key '" + key + "'" + where(cfg, key) + ": " + e.what(), key,
                          cfg.line_of(key));
    }
}

int cmd_dynamics(Context& ctx) {
    const DeviceParams d = device_from_config(ctx.cfg);
    const PulseParams p = resolved(d, pulse_from_config(ctx.cfg));
    const EvolutionSettings s = evolution_from_config(ctx.cfg);
    const BasisLabel initial = label_key(ctx.cfg, "initial", "101");
    std::vector<BasisLabel> states;
    try {
        states = parse_states(ctx.cfg.text("states").value_or("000,100,001,101"));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("key 'states'") + where(ctx.cfg, "states") + ": " + e.what(),
                          "states", ctx.cfg.line_of("states"));
    }
    for (const auto& l : states) flat_index(l, d);

    const Trajectory tr = evolve_trajectory(d, p, s, initial);
    std::vector<std::string> cols{"time_ns"};
    for (const auto& l : states) cols.push_back("p_" + l.str());
    cols.push_back("leakage_trace");
    CsvTable t(cols);
    auto h = header(ctx);
    append(h, "resolved", describe(d));
    append(h, "resolved", describe(p));
    append(h, "resolved", describe(s));
    t.comments(h);
    std::vector<std::vector<double>> pops;
    for (const auto& l : states) pops.push_back(tr.population(l));
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        std::vector<std::string> row{format_number(tr.times[k])};
        for (const auto& series : pops) row.push_back(format_number(series[k]));
        row.push_back(format_number(tr.leakage_trace[k]));
        t.add_row(std::move(row));
    }
    emit(ctx, t,
         "dynamics: initial |" + initial.str() + ">, " + std::to_string(tr.times.size()) +
             " samples, final leakage_trace = " + printf_str("%.6e", tr.leakage_trace.back()));
    return 0;
}

int cmd_gate_report(Context& ctx) {
    const DeviceParams d = device_from_config(ctx.cfg);
    const PulseParams p = resolved(d, pulse_from_config(ctx.cfg));
    const EvolutionSettings s = evolution_from_config(ctx.cfg);
    const GateReport r = simulate_gate(d, p, s);

    CsvTable t({"fidelity", "infidelity", "leakage", "cond_phase", "abs_cond_phase", "phase_error",
                "theta00", "theta10", "theta01", "theta11", "pop00", "pop10", "pop01", "pop11",
                "cost"});
    auto h = header(ctx);
    append(h, "resolved", describe(d));
    append(h, "resolved", describe(p));
    append(h, "resolved", describe(s));
    h.push_back("report:");
    h.push_back("  F          " + printf_str("%.6f", r.fidelity));
    h.push_back("  L1         " + printf_str("%.6e", r.leakage));
    h.push_back("  dtheta     " + printf_str("%.6f", r.cond_phase) + " rad");
    h.push_back("  |dtheta|-pi " + printf_str("%.3e", r.phase_error));
    h.push_back("  theta      " + printf_str("%.6f", r.theta[0]) + " " +
                printf_str("%.6f", r.theta[1]) + " " + printf_str("%.6f", r.theta[2]) + " " +
                printf_str("%.6f", r.theta[3]));
    h.push_back("  return     " + printf_str("%.6f", r.return_populations[0]) + " " +
                printf_str("%.6f", r.return_populations[1]) + " " +
                printf_str("%.6f", r.return_populations[2]) + " " +
                printf_str("%.6f", r.return_populations[3]));
    t.comments(h);
    std::vector<std::string> row{format_number(r.fidelity),    format_number(1.0 - r.fidelity),
                                 format_number(r.leakage),     format_number(r.cond_phase),
                                 format_number(std::abs(r.cond_phase)),
                                 format_number(r.phase_error)};
    for (double th : r.theta) row.push_back(format_number(th));
    for (double pop : r.return_populations) row.push_back(format_number(pop));
    row.push_back(format_number(cost(r)));
    t.add_row(std::move(row));
    emit(ctx, t,
         "gate-report: F = " + printf_str("%.6f", r.fidelity) + ", L1 = " +
             printf_str("%.3e", r.leakage) + ", dtheta = " + printf_str("%.5f", r.cond_phase) +
             " rad");
    return 0;
}

double pulse_field(const KeyValueConfig& cfg, const char* grid_key, double PulseParams::*field) {
    if (auto v = single(cfg, grid_key)) return *v;
    if (cfg.has("pulse") || cfg.has("t_f_ns") || cfg.has("detuning_ghz")) {
        PulseParams p;
        if (auto base = cfg.text("pulse")) p = load_pulse(*base);
        if (auto v = cfg.number("t_f_ns")) p.t_f = *v;
        if (auto v = cfg.number("detuning_ghz")) p.detuning = *v;
        return p.*field;
    }
    throw ConfigError(std::string("missing '") + grid_key + "'", grid_key, 0);
}

int cmd_optimize(Context& ctx) {
    const DeviceParams d = device_from_config(ctx.cfg);
    const double t_f = pulse_field(ctx.cfg, "tg", &PulseParams::t_f);
    const double det = pulse_field(ctx.cfg, "detuning", &PulseParams::detuning);
    OptimizeSettings s = optimize_from_config(ctx.cfg);
    const PulseShape x0 = s.initial.value_or(default_initial_point(t_f));
    const OptimizeResult r = optimize_pulse(d, t_f, det, s);

    CsvTable t({"t_g_ns", "detuning_ghz", "amp0_ghz", "lambda1", "lambda2", "drive_freq_ghz",
                "cost", "evaluations", "converged", "stop_reason", "fidelity", "leakage",
                "cond_phase", "phase_error"});
    auto h = header(ctx);
    append(h, "resolved", describe(d));
    append(h, "resolved", describe(s.evolution));
    h.push_back("optimizer.max_evals = " + std::to_string(s.max_evals));
    h.push_back("optimizer.cost_tol = " + format_number(s.cost_tol));
    h.push_back("optimizer.simplex_scale = " + format_number(s.simplex_scale));
    h.push_back("optimizer.initial = " + format_number(x0[0]) + " " + format_number(x0[1]) + " " +
                format_number(x0[2]));
    t.comments(h);
    const bool ok = r.cost < kFailedCost;
    t.add_row({format_number(t_f), format_number(det), format_number(r.pulse.amp0),
               format_number(r.pulse.lambda1), format_number(r.pulse.lambda2),
               r.pulse.drive_freq ? format_number(*r.pulse.drive_freq) : std::string(),
               format_number(r.cost), std::to_string(r.evaluations), r.converged ? "1" : "0",
               r.stop_reason, ok_field(ok, r.report.fidelity), ok_field(ok, r.report.leakage),
               ok_field(ok, r.report.cond_phase), ok_field(ok, r.report.phase_error)});
    emit(ctx, t,
         "optimize: cost = " + printf_str("%.3e", r.cost) + " after " +
             std::to_string(r.evaluations) + " evaluations (" + r.stop_reason + "), F = " +
             printf_str("%.6f", ok ? r.report.fidelity : 0.0));
    return 0;
}

SweepMode sweep_mode(const KeyValueConfig& cfg) {
    const std::string mode = cfg.text("mode").value_or("fixed");
    if (mode == "fixed") return SweepMode::fixed(pulse_from_config(cfg), evolution_from_config(cfg));
    if (mode == "optimize") return SweepMode::optimizing(optimize_from_config(cfg));
    throw ConfigError("key 'mode'" + where(cfg, "mode") + ": expected fixed or optimize, got '" +
                          mode + "'",
                      "mode", cfg.line_of("mode"));
}

int cmd_sweep(Context& ctx, bool two_d) {
    const DeviceParams d = device_from_config(ctx.cfg);
    const SweepMode mode = sweep_mode(ctx.cfg);
    std::vector<double> tg;
    if (two_d) {
        tg = grid(ctx.cfg, "tg");
    } else {
        tg = {pulse_field(ctx.cfg, "tg", &PulseParams::t_f)};
    }
    const auto det = grid(ctx.cfg, "detuning");
    const SweepResult rows = sweep_2d(d, tg, det, mode);

    CsvTable t({"t_g_ns", "detuning_ghz", "status", "leakage", "phase_error", "infidelity",
                "amp0_ghz", "lambda1", "lambda2"});
    auto h = header(ctx);
    append(h, "resolved", describe(d));
    if (mode.kind == SweepMode::Kind::fixed_pulse) {
        append(h, "resolved", {"amp0_ghz = " + format_number(mode.pulse.amp0),
                               "lambda1 = " + format_number(mode.pulse.lambda1),
                               "lambda2 = " + format_number(mode.pulse.lambda2)});
        append(h, "resolved", describe(mode.evolution));
    } else {
        append(h, "resolved", describe(mode.optimize.evolution));
        h.push_back("optimizer.max_evals = " + std::to_string(mode.optimize.max_evals));
        h.push_back("optimizer.cost_tol = " + format_number(mode.optimize.cost_tol));
    }
    t.comments(h);
    int failed = 0;
    double best = std::numeric_limits<double>::infinity();
    const SweepRow* best_row = nullptr;
    for (const auto& r : rows) {
        failed += r.ok ? 0 : 1;
        if (r.ok && r.infidelity < best) {
            best = r.infidelity;
            best_row = &r;
        }
        t.add_row({format_number(r.t_g), format_number(r.detuning), r.ok ? "ok" : "failed",
                   ok_field(r.ok, r.leakage), ok_field(r.ok, r.phase_error),
                   ok_field(r.ok, r.infidelity), format_number(r.amp0), format_number(r.lambda1),
                   format_number(r.lambda2)});
    }
    std::string summary = ctx.command + ": " + std::to_string(rows.size()) + " cells, " +
                          std::to_string(failed) + " failed";
    if (best_row) {
        summary += ", best 1-F = " + printf_str("%.3e", best) + " at t_g = " +
                   format_number(best_row->t_g) + " ns, detuning = " +
                   format_number(best_row->detuning) + " GHz";
    }
    emit(ctx, t, summary);
    return 0;
}

}  // namespace

std::string version() { return CZSIM_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coupler-driven CZ gate simulator", "czsim"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config, "key = value config file");
    app.add_option("--device", f.device, "device preset or file");
    app.add_option("--pulse", f.pulse, "pulse preset or file");
    app.add_option("--dt", f.dt, "time step, ns");
    app.add_option("--stride", f.stride, "steps between trajectory samples");
    app.add_option("--out", f.out, "output file");
    app.add_option("--mode", f.mode, "sweep mode: fixed or optimize");
    app.add_option("--tg", f.tg, "gate time grid a:b:n (ns)");
    app.add_option("--detuning", f.detuning, "drive detuning grid a:b:n (GHz)");
    app.add_option("--omega1", f.omega1, "q1 frequency grid a:b:n (GHz)");
    app.add_option("--omega2", f.omega2, "q2 frequency grid a:b:n (GHz)");
    app.add_option("--g", f.g, "coupling grid a:b:n (GHz)");
    app.add_option("--initial", f.initial, "initial bare label, e.g. 101");
    app.add_option("--states", f.states, "comma-separated labels to record");
    app.add_option("--max-evals", f.max_evals, "optimizer evaluation budget");

    const std::pair<const char*, const char*> commands[] = {
        {"zz", "static ZZ report"},
        {"zz-sweep", "ZZ over an omega1 x omega2 grid"},
        {"chi-sweep", "coupler transition shifts over a coupling grid"},
        {"dynamics", "population trajectory"},
        {"gate-report", "gate metrics for one pulse"},
        {"optimize", "Nelder-Mead pulse calibration"},
        {"sweep1d", "detuning sweep at one gate time"},
        {"sweep2d", "gate time x detuning sweep"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        Context ctx{app.get_subcommands().front()->get_name(), build_config(f), out, err};
        const std::string& c = ctx.command;
        if (c == "zz") return cmd_zz(ctx);
        if (c == "zz-sweep") return cmd_zz_sweep(ctx);
        if (c == "chi-sweep") return cmd_chi_sweep(ctx);
        if (c == "dynamics") return cmd_dynamics(ctx);
        if (c == "gate-report") return cmd_gate_report(ctx);
        if (c == "optimize") return cmd_optimize(ctx);
        if (c == "sweep1d") return cmd_sweep(ctx, false);
        return cmd_sweep(ctx, true);
    } catch (const ConfigError& e) {
        err << "czsim: config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "czsim: error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace czsim::cli
