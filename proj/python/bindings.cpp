#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "czsim/calibrate.hpp"
#include "czsim/cli.hpp"
#include "czsim/errors.hpp"
#include "czsim/metrics.hpp"
#include "czsim/propagator.hpp"
#include "czsim/pulse.hpp"
#include "czsim/spectrum.hpp"

namespace py = pybind11;
using namespace czsim;

namespace {

BasisLabel to_label(const py::object& o) {
    if (py::isinstance<py::str>(o)) return BasisLabel::parse(o.cast<std::string>());
    if (py::isinstance<BasisLabel>(o)) return o.cast<BasisLabel>();
    const auto t = o.cast<std::array<int, 3>>();
    return {t[0], t[1], t[2]};
}

py::dict report_dict(const GateReport& r) {
    py::dict d;
    d["theta"] = r.theta;
    d["cond_phase"] = r.cond_phase;
    d["phase_error"] = r.phase_error;
    d["leakage"] = r.leakage;
    d["fidelity"] = r.fidelity;
    d["return_populations"] = r.return_populations;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-transmon coupler-driven CZ gate simulator";
    m.attr("__version__") = cli::version();

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<AmbiguousLabeling>(m, "AmbiguousLabeling", base.ptr());
    py::register_exception<SingularConfiguration>(m, "SingularConfiguration", base.ptr());
    py::register_exception<IntegrationFailure>(m, "IntegrationFailure", base.ptr());
    py::register_exception<PhaseUndefined>(m, "PhaseUndefined", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<TransmonParams>(m, "TransmonParams")
        .def(py::init([](double f, double a, int levels) { return TransmonParams{f, a, levels}; }),
             py::arg("frequency"), py::arg("anharmonicity"), py::arg("levels") = 4)
        .def_readwrite("frequency", &TransmonParams::frequency)
        .def_readwrite("anharmonicity", &TransmonParams::anharmonicity)
        .def_readwrite("levels", &TransmonParams::levels);

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init([](TransmonParams q1, TransmonParams c, TransmonParams q2, double g1c, double g2c) {
                 DeviceParams d{q1, c, q2, g1c, g2c};
                 d.validate();
                 return d;
             }),
             py::arg("q1"), py::arg("coupler"), py::arg("q2"), py::arg("g1c"), py::arg("g2c"))
        .def_readwrite("q1", &DeviceParams::q1)
        .def_readwrite("coupler", &DeviceParams::coupler)
        .def_readwrite("q2", &DeviceParams::q2)
        .def_readwrite("g1c", &DeviceParams::g1c)
        .def_readwrite("g2c", &DeviceParams::g2c)
        .def_property_readonly("dimension", &DeviceParams::dimension)
        .def("validate", &DeviceParams::validate);

    py::class_<BasisLabel>(m, "BasisLabel")
        .def(py::init([](const py::object& o) { return to_label(o); }))
        .def_readonly("n1", &BasisLabel::n1)
        .def_readonly("nc", &BasisLabel::nc)
        .def_readonly("n2", &BasisLabel::n2)
        .def("__str__", &BasisLabel::str)
        .def("__repr__", [](const BasisLabel& l) { return "BasisLabel('" + l.str() + "')"; })
        .def(py::self == py::self);

    py::class_<PulseParams>(m, "PulseParams")
        .def(py::init([](double amp0, double l1, double l2, double t_f, double det) {
                 PulseParams p{amp0, l1, l2, t_f, det, std::nullopt};
                 p.validate();
                 return p;
             }),
             py::arg("amp0"), py::arg("lambda1"), py::arg("lambda2"), py::arg("t_f"), py::arg("detuning"))
        .def_readwrite("amp0", &PulseParams::amp0)
        .def_readwrite("lambda1", &PulseParams::lambda1)
        .def_readwrite("lambda2", &PulseParams::lambda2)
        .def_readwrite("t_f", &PulseParams::t_f)
        .def_readwrite("detuning", &PulseParams::detuning)
        .def_readwrite("drive_freq", &PulseParams::drive_freq)
        .def_property_readonly("lambda3", &PulseParams::lambda3);

    py::class_<EvolutionSettings>(m, "EvolutionSettings")
        .def(py::init([](double dt, int stride) { return EvolutionSettings{dt, stride}; }),
             py::arg("dt") = 0.005, py::arg("sample_stride") = 100)
        .def_readwrite("dt", &EvolutionSettings::dt)
        .def_readwrite("sample_stride", &EvolutionSettings::sample_stride);

    m.def("device_preset", &device_preset, py::arg("name"));
    m.def("device_preset_names", &device_preset_names);
    m.def("pulse_preset", &pulse_preset, py::arg("name"));
    m.def("pulse_preset_names", &pulse_preset_names);
    m.def("swapped_qubits", &swapped_qubits);

    m.def("static_hamiltonian", [](const DeviceParams& d) { return Eigen::MatrixXcd(build_static_hamiltonian(d)); },
          "Undriven Hamiltonian in rad/ns.");
    m.def("zz_exact", &zz_exact, "Static ZZ from diagonalisation, kHz.");
    m.def("zz_perturbative", &zz_perturbative, "Fourth-order ZZ, kHz.");
    m.def("effective_J", &effective_J, "Effective exchange, MHz.");
    m.def("zz_report", [](const DeviceParams& d) {
        const ZZReport r = zz_report(d);
        py::dict out;
        out["zeta_exact_khz"] = r.zeta_exact_khz;
        out["zeta_pert4_khz"] = r.zeta_pert4_khz;
        out["j_eff_mhz"] = r.j_eff_mhz;
        out["delta1_ghz"] = r.delta1_ghz;
        out["delta2_ghz"] = r.delta2_ghz;
        out["delta12_ghz"] = r.delta12_ghz;
        return out;
    });
    m.def("coupler_transitions", [](const DeviceParams& d) {
        const ChiReport c = coupler_transitions(d);
        return py::make_tuple(c.omega_c, c.chi);
    }, "(omega_c[m][n] in GHz, chi[m][n] in MHz)");
    m.def("zz_sweep", [](const DeviceParams& d, std::vector<double> w1, std::vector<double> w2) {
        py::list rows;
        for (const auto& r : zz_sweep(d, w1, w2)) {
            rows.append(py::make_tuple(r.omega1, r.omega2, r.ok ? py::object(py::float_(r.zeta_exact_khz)) : py::none(),
                                       r.pert_ok ? py::object(py::float_(r.zeta_pert4_khz)) : py::none()));
        }
        return rows;
    }, py::arg("device"), py::arg("omega1"), py::arg("omega2"));

    m.def("envelope", &envelope, py::arg("pulse"), py::arg("t"));
    m.def("resolve_drive_frequency", &resolve_drive_frequency, py::arg("device"), py::arg("detuning"));
    m.def("resolved", &resolved, py::arg("device"), py::arg("pulse"));

    m.def("evolve_unitary", [](const DeviceParams& d, const PulseParams& p, const EvolutionSettings& s) {
        py::gil_scoped_release release;
        return Eigen::MatrixXcd(evolve_unitary(d, p, s));
    }, py::arg("device"), py::arg("pulse"), py::arg("settings") = EvolutionSettings{});
    m.def("evolve_trajectory", [](const DeviceParams& d, const PulseParams& p, const EvolutionSettings& s,
                                  const py::object& initial) {
        const BasisLabel l = to_label(initial);
        Trajectory tr;
        {
            py::gil_scoped_release release;
            tr = evolve_trajectory(d, p, s, l);
        }
        py::dict out;
        out["times"] = tr.times;
        out["populations"] = tr.populations;
        out["leakage_trace"] = tr.leakage_trace;
        return out;
    }, py::arg("device"), py::arg("pulse"), py::arg("settings") = EvolutionSettings{}, py::arg("initial") = "101");
    m.def("max_unitarity_defect", [](const Eigen::MatrixXcd& u) { return max_unitarity_defect(OperatorMatrix(u)); });

    m.def("simulate_gate", [](const DeviceParams& d, const PulseParams& p, const EvolutionSettings& s) {
        GateReport r;
        {
            py::gil_scoped_release release;
            r = simulate_gate(d, p, s);
        }
        return report_dict(r);
    }, py::arg("device"), py::arg("pulse"), py::arg("settings") = EvolutionSettings{});
    m.def("gate_block", [](const DeviceParams& d, const PulseParams& p, const EvolutionSettings& s) {
        py::gil_scoped_release release;
        return Eigen::Matrix4cd(simulate_block(d, p, s).u);
    }, py::arg("device"), py::arg("pulse"), py::arg("settings") = EvolutionSettings{});
    m.def("cost", [](const DeviceParams& d, double t_f, double det, double amp0, double l1, double l2,
                     const EvolutionSettings& s) { return cost(d, t_f, det, amp0, l1, l2, s); },
          py::arg("device"), py::arg("t_f"), py::arg("detuning"), py::arg("amp0"), py::arg("lambda1"),
          py::arg("lambda2"), py::arg("settings") = EvolutionSettings{});

    m.def("default_initial_point", &default_initial_point, py::arg("t_f"));
    m.def("optimize_pulse", [](const DeviceParams& d, double t_f, double det, std::optional<PulseShape> initial,
                               int max_evals, double cost_tol, double dt) {
        OptimizeSettings s;
        s.initial = initial;
        s.max_evals = max_evals;
        s.cost_tol = cost_tol;
        s.evolution.dt = dt;
        OptimizeResult r;
        {
            py::gil_scoped_release release;
            r = optimize_pulse(d, t_f, det, s);
        }
        py::dict out;
        out["pulse"] = r.pulse;
        out["report"] = report_dict(r.report);
        out["cost"] = r.cost;
        out["evaluations"] = r.evaluations;
        out["converged"] = r.converged;
        out["stop_reason"] = r.stop_reason;
        out["best_history"] = r.best_history;
        return out;
    }, py::arg("device"), py::arg("t_f"), py::arg("detuning"), py::arg("initial") = py::none(),
       py::arg("max_evals") = 400, py::arg("cost_tol") = 1e-6, py::arg("dt") = 0.005);

    m.def("sweep_2d", [](const DeviceParams& d, std::vector<double> tg, std::vector<double> det,
                         const PulseParams& pulse, const EvolutionSettings& s) {
        SweepResult rows;
        {
            py::gil_scoped_release release;
            rows = sweep_2d(d, tg, det, SweepMode::fixed(pulse, s));
        }
        py::list out;
        for (const auto& r : rows) {
            py::dict row;
            row["t_g"] = r.t_g;
            row["detuning"] = r.detuning;
            row["ok"] = r.ok;
            row["leakage"] = r.leakage;
            row["phase_error"] = r.phase_error;
            row["infidelity"] = r.infidelity;
            out.append(row);
        }
        return out;
    }, py::arg("device"), py::arg("t_g"), py::arg("detuning"), py::arg("pulse"),
       py::arg("settings") = EvolutionSettings{}, "Fixed-pulse sweep, gate-time major.");

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = cli::run(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
    }, py::arg("args"));
}
