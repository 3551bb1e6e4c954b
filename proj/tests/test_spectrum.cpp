#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "czsim/device.hpp"
#include "czsim/errors.hpp"
#include "czsim/spectrum.hpp"

using namespace czsim;

namespace {

DeviceParams table_one() { return device_preset("paper-tableI"); }
DeviceParams table_three() { return device_preset("paper-tableIII"); }

// Reference values from an independent numpy/scipy diagonalisation
// (tests/oracle/reference.py).
constexpr double kZetaTableOneKhz = -12.572429520574246;
constexpr double kZetaPertTableOneKhz = -12.57084398976982;
constexpr double kZetaTableThreeKhz = 22.26766341539843;
constexpr double kZetaPertTableThreeKhz = 22.157061599878332;

}  // namespace

TEST(DressedSpectrum, UncoupledIsBare) {
    DeviceParams d = table_one();
    d.g1c = d.g2c = 0.0;
    const DressedSpectrum s = static_spectrum(d);
    for (const auto& e : s.entries()) {
        EXPECT_NEAR(e.overlap, 1.0, 1e-12);
        const OperatorMatrix h = build_static_hamiltonian(d);
        const int k = flat_index(e.label, d);
        EXPECT_NEAR(e.energy, h(k, k).real(), 1e-9);
    }
    EXPECT_TRUE(s.ambiguous_labels().empty());
}

TEST(DressedSpectrum, LabelsAreAPermutation) {
    const DressedSpectrum s = static_spectrum(table_three());
    std::vector<int> seen;
    for (const auto& e : s.entries()) seen.push_back(flat_index(e.label, s.device()));
    std::sort(seen.begin(), seen.end());
    for (int i = 0; i < 64; ++i) EXPECT_EQ(seen[i], i);
}

TEST(DressedSpectrum, EigenpairsAndGauge) {
    const DeviceParams d = table_one();
    const OperatorMatrix h = build_static_hamiltonian(d);
    const DressedSpectrum s = dressed_spectrum(h, d);
    for (const auto& e : s.entries()) {
        const Eigen::VectorXcd r = h * e.vector - e.energy * e.vector;
        EXPECT_LT(r.norm(), 1e-9);
        const Complex c = e.vector(flat_index(e.label, d));
        EXPECT_GT(c.real(), 0.0);
        EXPECT_NEAR(c.imag(), 0.0, 1e-12);
        EXPECT_NEAR(std::norm(c), e.overlap, 1e-12);
    }
    EXPECT_NEAR(s.energy({1, 0, 0}) / kTwoPi, 6.50638, 5e-5);
}

TEST(DressedSpectrum, ResonantRegimeIsAmbiguous) {
    DeviceParams d = table_one();
    d.q2.frequency = d.coupler.frequency;
    try {
        static_spectrum(d);
        FAIL() << "expected AmbiguousLabeling";
    } catch (const AmbiguousLabeling& e) {
        EXPECT_FALSE(e.labels().empty());
    }
}

TEST(ZZ, UncoupledIsZero) {
    DeviceParams d = table_one();
    d.g1c = d.g2c = 0.0;
    EXPECT_EQ(zz_exact(d), 0.0);
    EXPECT_EQ(zz_perturbative(d), 0.0);
    d = table_one();
    d.g1c = 0.0;
    EXPECT_EQ(zz_perturbative(d), 0.0);
    EXPECT_NEAR(zz_exact(d), 0.0, 1e-9);
}

TEST(ZZ, TableOneMatchesReference) {
    EXPECT_NEAR(zz_exact(table_one()), kZetaTableOneKhz, 1e-5);
    EXPECT_NEAR(std::abs(zz_exact(table_one())), 12.57, 0.6);
    EXPECT_NEAR(zz_perturbative(table_one()), kZetaPertTableOneKhz, 1e-9);
    EXPECT_NEAR(zz_perturbative(table_one()), -12.57, 0.01);
}

TEST(ZZ, TableThreeMatchesReference) {
    EXPECT_NEAR(zz_exact(table_three()), kZetaTableThreeKhz, 1e-5);
    EXPECT_NEAR(zz_perturbative(table_three()), kZetaPertTableThreeKhz, 1e-9);
}

TEST(ZZ, PerturbativeTermsByHand) {
    // D1 = 1, D2 = -1, D12 = 2, alpha = -0.3: 1/(1*2.3) - 1/(1*1.7) + 0.
    const double s = 1.0 / 2.3 - 1.0 / 1.7;
    EXPECT_NEAR(1.0 / 2.3, 0.43478, 1e-5);
    EXPECT_NEAR(-1.0 / 1.7, -0.58824, 1e-5);
    EXPECT_NEAR(zz_perturbative(table_one()), 2.0 * std::pow(0.08, 4) * s * 1e6, 1e-9);
}

TEST(ZZ, PerturbativeSingular) {
    DeviceParams d = table_one();
    d.q1.frequency = d.coupler.frequency;
    EXPECT_THROW(zz_perturbative(d), SingularConfiguration);
}

TEST(ZZ, QuarticScalingInDispersiveRegime) {
    for (double g : {0.04, 0.02, 0.01}) {
        DeviceParams full = table_one();
        full.g1c = full.g2c = g;
        DeviceParams half = full;
        half.g1c = half.g2c = g / 2;
        EXPECT_NEAR(zz_exact(half) / zz_exact(full), 1.0 / 16.0, 0.05) << g;
    }
}

TEST(ZZ, PerturbativeAgreesAtTwentyMegahertz) {
    DeviceParams d = table_one();
    d.g1c = d.g2c = 0.02;
    const double exact = zz_exact(d);
    EXPECT_LE(std::abs(zz_perturbative(d) - exact), 0.05 * std::abs(exact));
    EXPECT_NEAR(exact, -0.049105755017819774, 1e-7);
}

TEST(ZZ, SymmetricUnderQubitSwap) {
    for (const DeviceParams& d : {table_one(), table_three()}) {
        EXPECT_NEAR(zz_exact(swapped_qubits(d)), zz_exact(d), 1e-6);
        EXPECT_NEAR(zz_perturbative(swapped_qubits(d)), zz_perturbative(d), 1e-9);
    }
}

TEST(EffectiveJ, OppositeDetuningsCancel) { EXPECT_NEAR(effective_J(table_one()), 0.0, 1e-15); }

TEST(EffectiveJ, TableThreeByHand) {
    const double j = 0.040 * 0.031 / 2.0 * (1.0 / -0.676 + 1.0 / -0.810) * 1e3;
    EXPECT_NEAR(effective_J(table_three()), j, 1e-12);
    EXPECT_NEAR(effective_J(table_three()), -1.68, 0.005);
}

TEST(EffectiveJ, ZeroDetuningIsSingular) {
    DeviceParams d = table_one();
    d.q2.frequency = d.coupler.frequency;
    EXPECT_THROW(effective_J(d), SingularConfiguration);
}

TEST(ZZReport, Fields) {
    const ZZReport r = zz_report(table_three());
    EXPECT_NEAR(r.delta1_ghz, -0.676, 1e-12);
    EXPECT_NEAR(r.delta2_ghz, -0.810, 1e-12);
    EXPECT_NEAR(r.delta12_ghz, 0.134, 1e-12);
    EXPECT_NEAR(r.zeta_exact_khz, kZetaTableThreeKhz, 1e-5);
}

TEST(CouplerTransitions, UncoupledIsBare) {
    DeviceParams d = table_one();
    d.g1c = d.g2c = 0.0;
    const ChiReport c = coupler_transitions(d);
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            EXPECT_NEAR(c.omega_c[m][n], 5.5, 1e-12);
            EXPECT_NEAR(c.chi[m][n], 0.0, 1e-9);
        }
    }
}

TEST(CouplerTransitions, TableOneReference) {
    const ChiReport c = coupler_transitions(table_one());
    EXPECT_NEAR(c.omega_c[0][0], 5.500000000000063, 1e-9);
    EXPECT_NEAR(c.chi[0][1], -8.179440026667706, 1e-6);
    EXPECT_NEAR(c.chi[1][0], -8.211967788603225, 1e-6);
    EXPECT_NEAR(c.chi[1][1], -16.33063767529208, 1e-6);
    EXPECT_LE(std::abs(c.chi[1][0] - c.chi[0][1]), 0.1 * std::abs(c.chi[0][1]));
}

TEST(CouplerTransitions, TableThreeReference) {
    const ChiReport c = coupler_transitions(table_three());
    EXPECT_NEAR(c.omega_c[0][0], 6.320535811764239, 1e-9);
    EXPECT_NEAR(c.chi[0][1], -2.2158105191785182, 1e-6);
    EXPECT_NEAR(c.chi[1][0], -5.017904022279751, 1e-6);
    EXPECT_NEAR(c.chi[1][1], -7.298531288412846, 1e-6);
}

TEST(ZZSweep, SinglePointMatchesZZExact) {
    const DeviceParams d = table_one();
    const std::vector<double> w1{6.5};
    const std::vector<double> w2{4.5};
    const auto rows = zz_sweep(d, w1, w2);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0].ok);
    EXPECT_NEAR(rows[0].zeta_exact_khz, kZetaTableOneKhz, 1e-5);
    EXPECT_NEAR(std::abs(rows[0].zeta_exact_khz), 12.57, 0.6);
}

TEST(ZZSweep, ResonanceIsFlaggedNotThrown) {
    const DeviceParams d = table_one();
    const std::vector<double> w1{6.5};
    const std::vector<double> w2{5.3, 5.5, 5.7};
    const auto rows = zz_sweep(d, w1, w2);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_FALSE(rows[1].ok);
    EXPECT_FALSE(rows[1].pert_ok);
}

TEST(ZZSweep, OrderIsOmegaOneMajor) {
    const DeviceParams d = table_one();
    const std::vector<double> w1{6.4, 6.5};
    const std::vector<double> w2{4.4, 4.5, 4.6};
    const auto rows = zz_sweep(d, w1, w2);
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_DOUBLE_EQ(rows[i].omega1, w1[i / 3]);
        EXPECT_DOUBLE_EQ(rows[i].omega2, w2[i % 3]);
    }
}

TEST(ZZSweep, ZeroCrossingAlongOmegaTwo) {
    const DeviceParams d = table_one();
    const std::vector<double> w1{6.45};
    std::vector<double> w2;
    for (int i = 0; i <= 24; ++i) w2.push_back(4.2 + 0.025 * i);
    const auto rows = zz_sweep(d, w1, w2);
    int changes = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].ok && rows[i - 1].ok &&
            std::signbit(rows[i].zeta_exact_khz) != std::signbit(rows[i - 1].zeta_exact_khz)) {
            ++changes;
        }
    }
    EXPECT_GE(changes, 1);
}

TEST(ChiSweep, SetsBothCouplings) {
    const std::vector<double> g{0.0, 0.08};
    const auto rows = chi_sweep(table_one(), g);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0].ok);
    EXPECT_NEAR(rows[0].chi.chi[1][1], 0.0, 1e-9);
    EXPECT_NEAR(rows[1].chi.chi[1][1], -16.33063767529208, 1e-6);
}
