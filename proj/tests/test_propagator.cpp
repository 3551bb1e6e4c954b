#include <gtest/gtest.h>

#include <cmath>

#include "czsim/errors.hpp"
#include "czsim/metrics.hpp"
#include "czsim/propagator.hpp"
#include "czsim/spectrum.hpp"

using namespace czsim;

namespace {

DeviceParams table_one() { return device_preset("paper-tableI"); }

PulseParams short_pulse() {
    PulseParams p = pulse_preset("tableII-a");
    p.t_f = 40.0;
    p.amp0 = 0.03;
    return p;
}

}  // namespace

TEST(EvolutionSettings, Steps) {
    EvolutionSettings s;
    EXPECT_EQ(s.steps(250.0), 50000);
    s.dt = 0.3;
    EXPECT_EQ(s.steps(1.0), 3);
    EXPECT_THROW(s.validate(1.0), InvalidArgument);
    s.dt = -1.0;
    EXPECT_THROW(s.validate(100.0), InvalidArgument);
}

TEST(Propagator, UnitaryWithinTolerance) {
    const DeviceParams d = table_one();
    const OperatorMatrix u = evolve_unitary(d, short_pulse(), {});
    EXPECT_LE(max_unitarity_defect(u), 1e-8);
}

TEST(Propagator, FullRunUnitary) {
    const OperatorMatrix u = evolve_unitary(table_one(), pulse_preset("tableII-a"), {});
    EXPECT_LE(max_unitarity_defect(u), 1e-8);
}

TEST(Propagator, UndrivenMatchesSpectralExponential) {
    const DeviceParams d = table_one();
    PulseParams p = short_pulse();
    p.amp0 = 0.0;
    p = resolved(d, p);
    const OperatorMatrix u = evolve_unitary(d, p, {});
    const RotatingHamiltonian h = build_rotating_hamiltonian(d, *p.drive_freq);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(h.static_part));
    const Eigen::VectorXcd phase =
        (es.eigenvalues().cast<Complex>() * Complex(0.0, -p.t_f)).array().exp();
    const Eigen::MatrixXcd exact = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    EXPECT_LT((Eigen::MatrixXcd(u) - exact).cwiseAbs().maxCoeff(), 1e-9);

    const DressedSpectrum s = dressed_spectrum(h.static_part, d);
    const ComputationalBlock b = extract_block(u, s);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(b.u(i, i)), 1.0, 1e-8);
        for (int j = 0; j < 4; ++j) {
            if (i != j) EXPECT_LT(std::abs(b.u(i, j)), 1e-8);
        }
    }
}

TEST(Propagator, Semigroup) {
    const DeviceParams d = table_one();
    const PulseParams p = resolved(d, short_pulse());
    const EvolutionSettings s;
    const long n = s.steps(p.t_f);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(64, 64);
    const Eigen::MatrixXcd first = evolve_states(d, p, s, id, 0, n / 2);
    const Eigen::MatrixXcd both = evolve_states(d, p, s, first, n / 2, n);
    const Eigen::MatrixXcd full = evolve_states(d, p, s, id, 0, n);
    EXPECT_LT((both - full).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((both - Eigen::MatrixXcd(evolve_unitary(d, p, s))).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Propagator, ColumnsEvolveIndependently) {
    const DeviceParams d = table_one();
    const PulseParams p = resolved(d, short_pulse());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(64, 64);
    const Eigen::MatrixXcd full = evolve_states(d, p, {}, id);
    const Eigen::MatrixXcd one = evolve_states(d, p, {}, id.col(21));
    EXPECT_LT((full.col(21) - one.col(0)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Propagator, RejectsBadInput) {
    const DeviceParams d = table_one();
    const PulseParams p = resolved(d, short_pulse());
    EXPECT_THROW(evolve_states(d, p, {}, Eigen::MatrixXcd::Identity(8, 8)), InvalidArgument);
    EXPECT_THROW(evolve_states(d, p, {}, Eigen::MatrixXcd::Identity(64, 64), 5, 2), InvalidArgument);
}

TEST(Propagator, DtHalvingConvergence) {
    const DeviceParams d = table_one();
    const PulseParams p = pulse_preset("tableII-a");
    EvolutionSettings fine;
    fine.dt = 0.0025;
    const GateReport a = simulate_gate(d, p, {});
    const GateReport b = simulate_gate(d, p, fine);
    EXPECT_LE(std::abs(a.fidelity - b.fidelity), 1e-6);
    EXPECT_LE(std::abs(a.leakage - b.leakage), 1e-6);
    EXPECT_LE(std::abs(a.cond_phase - b.cond_phase), 1e-6);
}

TEST(Trajectory, SamplingAndNormalisation) {
    const DeviceParams d = table_one();
    EvolutionSettings s;
    s.sample_stride = 1000;
    const Trajectory tr = evolve_trajectory(d, short_pulse(), s, {1, 0, 1});
    ASSERT_EQ(tr.times.size(), 9u);
    EXPECT_DOUBLE_EQ(tr.times.front(), 0.0);
    EXPECT_NEAR(tr.times.back(), 40.0, 1e-12);
    EXPECT_EQ(tr.populations.rows(), 9);
    EXPECT_EQ(tr.populations.cols(), 64);
    for (int k = 0; k < tr.populations.rows(); ++k) {
        EXPECT_NEAR(tr.populations.row(k).sum(), 1.0, 1e-10);
    }
    const DressedSpectrum sp = static_spectrum(d);
    EXPECT_NEAR(tr.population({1, 0, 1}).front(), sp.state({1, 0, 1}).overlap, 1e-12);
    const double comp = tr.population({0, 0, 0})[3] + tr.population({1, 0, 0})[3] +
                        tr.population({0, 0, 1})[3] + tr.population({1, 0, 1})[3];
    EXPECT_NEAR(tr.leakage_trace[3], 1.0 - comp, 1e-12);
}

TEST(Trajectory, LastSampleIsFinalStep) {
    const DeviceParams d = table_one();
    EvolutionSettings s;
    s.sample_stride = 3000;
    const Trajectory tr = evolve_trajectory(d, short_pulse(), s, {0, 0, 0});
    ASSERT_EQ(tr.times.size(), 4u);
    EXPECT_NEAR(tr.times[2], 30.0, 1e-12);
    EXPECT_NEAR(tr.times[3], 40.0, 1e-12);
}
