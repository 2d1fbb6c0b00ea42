#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "optocav/analytic.hpp"

using namespace optocav;
using namespace optocav::analytic;

namespace {

SystemParams fig2() { return SystemParams{}; }

SystemParams fig3() {
    SystemParams p;
    p.g_ca = 0.48;
    return p;
}

constexpr double kPi = std::numbers::pi;

} // namespace

TEST(DerivedParams, OnResonance) {
    const auto d = derived_params(fig2());
    EXPECT_NEAR(d.Omega_g, 0.1, 1e-15);
    EXPECT_NEAR(d.eta, 1.0, 1e-14);
    EXPECT_NEAR(d.xi, 0.0, 1e-14);
    EXPECT_NEAR(d.Omega_ca, 1.0, 1e-15);
    EXPECT_NEAR(d.Nnorm, 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(DerivedParams, OffResonanceHighPrecisionValues) {
    const auto d = derived_params(fig3());
    EXPECT_NEAR(d.Omega_g, 0.10770329614269008, 1e-14);
    EXPECT_NEAR(d.eta, 0.6770329614269008, 1e-13);
    EXPECT_NEAR(d.xi, 0.37139067635410373, 1e-13);
    EXPECT_NEAR(d.Omega_plus, 0.5 * (1.0 + d.Omega_g), 1e-15);
    EXPECT_NEAR(d.Omega_minus, 0.5 * (1.0 - d.Omega_g), 1e-15);
}

TEST(DerivedParams, ResonanceKeepsEtaOneForAnyCoupling) {
    for (double g_cm : {1e-4, 0.01, 0.1, 1.0, 10.0, 1e3}) {
        SystemParams p;
        p.g_cm = g_cm;
        EXPECT_NEAR(derived_params(p).eta, 1.0, 1e-12) << "g_cm=" << g_cm;
    }
}

TEST(DerivedParams, DegenerateCoupling) {
    SystemParams p;
    p.g_cm = 0.0;
    EXPECT_THROW(derived_params(p), DegenerateCoupling);
    EXPECT_THROW(amplitudes(1.0, p), DegenerateCoupling);
    EXPECT_THROW(delta_p_general(1.0, p), DegenerateCoupling);
    EXPECT_NO_THROW(delta_p_resonant(1.0, p));
}

TEST(DressedBasis, OrthonormalEigenvectors) {
    for (auto frame : {Frame::rotating_at_omega_c, Frame::lab}) {
        SystemParams p;
        p.frame = frame;
        const auto ds = dressed_basis_vectors(p);
        EXPECT_NEAR(std::abs(inner(ds.plus, ds.minus)), 0.0, 1e-15);
        EXPECT_NEAR(inner(ds.plus, ds.plus).real(), 1.0, 1e-15);

        const auto h = build_h_ca(p);
        const double wa = frame == Frame::lab ? p.omega_a : 0.0;
        EXPECT_NEAR(ds.energy_plus, 0.5 * wa + p.g_ca, 1e-12);
        EXPECT_NEAR(ds.energy_minus, 0.5 * wa - p.g_ca, 1e-12);
        for (const auto& [v, e] : {std::pair{ds.plus, ds.energy_plus}, std::pair{ds.minus, ds.energy_minus}}) {
            auto hv = optocav::apply(h, v);
            double residual = 0.0;
            for (std::size_t i = 0; i < hv.size(); ++i) residual = std::max(residual, std::abs(hv[i] - e * v[i]));
            EXPECT_LE(residual, 1e-12);
        }
    }
}

TEST(DressedBasis, InversionGivesExcitedVacuum) {
    SystemParams p;
    const auto ds = dressed_basis_vectors(p);
    const auto target = basis_state(p, 0, kExcited, 0);
    for (std::size_t i = 0; i < p.dim(); ++i)
        EXPECT_NEAR(std::abs((ds.plus[i] - ds.minus[i]) / std::sqrt(2.0) - target[i]), 0.0, 1e-15);
}

TEST(DressedBasis, RejectsDetuning) {
    SystemParams p;
    p.omega_a = 99.99;
    EXPECT_THROW(dressed_basis_vectors(p), OffResonance);
}

TEST(EffectiveHamiltonian, Entries) {
    const auto p = fig3();
    const auto h = build_h_eff_3d(p);
    EXPECT_EQ(h(0, 0), Complex(-p.g_ca));
    EXPECT_EQ(h(1, 1), Complex(p.g_ca));
    EXPECT_EQ(h(2, 2), Complex(-p.g_ca + p.omega_m));
    EXPECT_EQ(h(1, 2), Complex(-p.g_cm / 2));
    EXPECT_EQ(h(2, 1), Complex(-p.g_cm / 2));
    EXPECT_EQ(h(0, 1), Complex{});
    EXPECT_EQ(h(0, 2), Complex{});
}

TEST(EffectiveHamiltonian, EigenvaluesMatchClosedFormOverGrid) {
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            SystemParams p;
            p.g_ca = 0.4 + 0.02 * i;
            p.g_cm = 0.01 + 0.019 * j;
            const auto d = derived_params(p);
            std::vector<double> expected{-p.g_ca, d.Omega_plus, d.Omega_minus};
            std::sort(expected.begin(), expected.end());
            const auto got = hermitian_eigenvalues(build_h_eff_3d(p));
            for (int k = 0; k < 3; ++k) EXPECT_NEAR(got[k], expected[k], 1e-12);
        }
}

TEST(Amplitudes, InitialCondition) {
    for (const auto& p : {fig2(), fig3()}) {
        const auto a = amplitudes(0.0, p);
        EXPECT_NEAR(std::abs(a.a_0e0 - Complex(1.0)), 0.0, 1e-15);
        EXPECT_EQ(a.a_0e1, Complex{});
    }
}

TEST(Amplitudes, QuarterPopulationAtHalfModulation) {
    const auto p = fig2();
    const auto a = amplitudes(kPi / p.g_cm, p);
    EXPECT_NEAR(std::norm(a.a_0e1), 0.25, 1e-12);
}

TEST(Amplitudes, ExcitedProbabilityMatchesGeneralFormula) {
    for (const auto& p : {fig2(), fig3()}) {
        for (int k = 0; k <= 2000; ++k) {
            const double t = 4.0 * kPi / p.g_cm * k / 2000.0;
            const double pe = amplitudes(t, p).excited_probability();
            EXPECT_NEAR(pe, 0.5 * (1.0 + delta_p_general(t, p)), 1e-12) << "t=" << t;
            EXPECT_GE(pe, -1e-12);
            EXPECT_LE(pe, 1.0 + 1e-12);
        }
    }
}

TEST(DeltaP, InitialValueAndHighPrecisionSamples) {
    EXPECT_EQ(delta_p_general(0.0, fig3()), 1.0);
    EXPECT_EQ(delta_p_resonant(0.0, fig2()), 1.0);
    EXPECT_NEAR(delta_p_general(10.0, fig3()), -0.868547686333608, 1e-12);
    EXPECT_NEAR(delta_p_resonant(5.0, fig2()), 0.2748438150649086, 1e-14);
}

TEST(DeltaP, ResonantEnvelopeZeroAndRevival) {
    const auto p = fig2();
    EXPECT_NEAR(delta_p_resonant(kPi / p.g_cm, p), 0.0, 1e-12);
    EXPECT_NEAR(delta_p_resonant(2.0 * kPi / p.g_cm, p), -1.0, 1e-12);
}

TEST(DeltaP, FormulasCoincideOnResonance) {
    for (double g_cm : {0.02, 0.1, 0.3}) {
        SystemParams p;
        p.g_cm = g_cm;
        for (int k = 0; k < 10000; ++k) {
            const double t = 4.0 * kPi / g_cm * k / 9999.0;
            ASSERT_NEAR(delta_p_general(t, p), delta_p_resonant(t, p), 1e-12) << "t=" << t;
        }
    }
}

TEST(DeltaP, BoundedByOne) {
    for (const auto& p : {fig2(), fig3()})
        for (int k = 0; k <= 20000; ++k) {
            const double t = 4.0 * kPi / p.g_cm * k / 20000.0;
            EXPECT_LE(std::abs(delta_p_general(t, p)), 1.0 + 1e-15);
            EXPECT_LE(std::abs(delta_p_resonant(t, p)), 1.0);
        }
}

TEST(DeltaP, ModulationPeriod) {
    // Envelope |cos(g_cm t/2)| peaks at multiples of 2π/g_cm and vanishes halfway between.
    const auto p = fig2();
    const double period = 2.0 * kPi / p.g_cm;
    for (int k = 0; k <= 2; ++k) {
        const double t = k * period;
        EXPECT_NEAR(std::abs(delta_p_resonant(t, p)), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(delta_p_resonant(t + 0.5 * period, p)), 0.0, 1e-12);
    }
}
