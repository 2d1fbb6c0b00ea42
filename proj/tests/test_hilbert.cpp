#include <gtest/gtest.h>

#include <cmath>

#include "optocav/hilbert.hpp"
#include "optocav/observables.hpp"

using namespace optocav;

namespace {

Complex expectation(const ComplexMatrix& op, const std::vector<Complex>& v) {
    return inner(v, optocav::apply(op, v));
}

Complex element(const ComplexMatrix& op, const std::vector<Complex>& bra, const std::vector<Complex>& ket) {
    return inner(bra, optocav::apply(op, ket));
}

} // namespace

TEST(Annihilation, SmallDimensions) {
    EXPECT_EQ(annihilation(2), ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));
    const auto a3 = annihilation(3);
    EXPECT_EQ(a3(0, 1), Complex(1.0));
    EXPECT_EQ(a3(1, 2), Complex(std::sqrt(2.0)));
    EXPECT_EQ(a3(0, 2), Complex{});
    EXPECT_EQ(a3(1, 0), Complex{});
}

TEST(Annihilation, RejectsTooSmall) {
    EXPECT_THROW(annihilation(1), BadDimension);
    EXPECT_THROW(annihilation(0), BadDimension);
}

TEST(Annihilation, TruncatedCommutator) {
    const std::size_t d = 6;
    const auto a = annihilation(d);
    const auto comm = commutator(a, dagger(a));
    for (std::size_t i = 0; i + 1 < d; ++i) EXPECT_NEAR(comm(i, i).real(), 1.0, 1e-14);
    EXPECT_NEAR(comm(d - 1, d - 1).real(), 1.0 - static_cast<double>(d), 1e-13);
    EXPECT_LE(max_abs_diff(dagger(a) * a, number_operator(d)), 1e-14);
}

TEST(Embed, IdentityInEverySlot) {
    SystemParams p;
    p.d_m = 3;
    EXPECT_EQ(embed(ComplexMatrix::identity(2), Slot::cavity, p), ComplexMatrix::identity(p.dim()));
    EXPECT_EQ(embed(ComplexMatrix::identity(2), Slot::atom, p), ComplexMatrix::identity(p.dim()));
    EXPECT_EQ(embed(ComplexMatrix::identity(3), Slot::mech, p), ComplexMatrix::identity(p.dim()));
}

TEST(Embed, SigmaZOrdering) {
    SystemParams p;
    p.d_m = 2;
    EXPECT_EQ(embed(sigma_z(), Slot::atom, p), ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0}));
}

TEST(Embed, DimensionMismatch) {
    SystemParams p;
    EXPECT_THROW(embed(ComplexMatrix::identity(3), Slot::atom, p), DimensionMismatch);
    EXPECT_THROW(embed(ComplexMatrix::identity(2), Slot::mech, p), DimensionMismatch);
}

TEST(SystemParams, Validation) {
    SystemParams p;
    EXPECT_NO_THROW(p.validate());
    p.kappa = -0.1;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = {};
    p.d_m = 1;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = {};
    p.omega_m = 2.0;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = {};
    p.g_ca = std::nan("");
    EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(Hamiltonian, CouplingMatrixElements) {
    SystemParams p;
    const auto h = build_hamiltonian(p);
    EXPECT_NEAR(std::abs(element(h, basis_state(p, 1, kGround, 0), basis_state(p, 0, kExcited, 0)) - p.g_ca), 0.0,
                1e-15);
    EXPECT_NEAR(std::abs(element(h, basis_state(p, 1, kGround, 1), basis_state(p, 1, kGround, 0)) + p.g_cm), 0.0,
                1e-15);
    EXPECT_LE(hermiticity_defect(h), 1e-12);
}

TEST(Hamiltonian, DecoupledDiagonalCase) {
    SystemParams p;
    p.g_ca = 0.0;
    p.g_cm = 0.0;
    p.d_m = 4;
    const auto h = build_hamiltonian(p);
    for (std::size_t n_c = 0; n_c < p.d_c; ++n_c)
        for (std::size_t s = 0; s < 2; ++s)
            for (std::size_t n_m = 0; n_m < p.d_m; ++n_m) {
                const auto i = p.index(n_c, s, n_m);
                EXPECT_NEAR(std::abs(h(i, i) - static_cast<double>(n_m)), 0.0, 1e-14);
            }
    for (std::size_t i = 0; i < p.dim(); ++i)
        for (std::size_t j = 0; j < p.dim(); ++j)
            if (i != j) {
                EXPECT_EQ(h(i, j), Complex{});
            }
}

TEST(Hamiltonian, LabFrameAddsBareFrequencies) {
    SystemParams p;
    p.frame = Frame::lab;
    p.omega_a = 100.25;
    const auto h = build_hamiltonian(p);
    const auto e = basis_state(p, 0, kExcited, 0);
    const auto g1 = basis_state(p, 1, kGround, 0);
    EXPECT_NEAR(expectation(h, e).real(), 0.5 * p.omega_a, 1e-12);
    EXPECT_NEAR(expectation(h, g1).real(), p.omega_c - 0.5 * p.omega_a, 1e-12);

    p.frame = Frame::rotating_at_omega_c;
    const auto hr = build_hamiltonian(p);
    EXPECT_NEAR(expectation(hr, e).real(), 0.125, 1e-12);
    EXPECT_NEAR(expectation(hr, g1).real(), -0.125, 1e-12);
}

TEST(ExcitationNumber, BasisExpectations) {
    SystemParams p;
    const auto n = excitation_number(p);
    EXPECT_EQ(expectation(n, basis_state(p, 0, kExcited, 0)), Complex(1.0));
    EXPECT_EQ(expectation(n, basis_state(p, 1, kGround, 0)), Complex(1.0));
    EXPECT_EQ(expectation(n, basis_state(p, 0, kGround, 3)), Complex(0.0));
}

TEST(ExcitationNumber, CommutesWithHamiltonian) {
    for (auto frame : {Frame::lab, Frame::rotating_at_omega_c}) {
        SystemParams p;
        p.frame = frame;
        p.omega_a = 99.7;
        p.d_c = 3;
        p.d_m = 5;
        EXPECT_LE(max_abs(commutator(excitation_number(p), build_hamiltonian(p))), 1e-12);
    }
}

TEST(ThermalState, GroundStateAndNormalization) {
    const auto t0 = thermal_state(5, 0.0);
    auto ground = ComplexMatrix::zeros(5);
    ground(0, 0) = 1.0;
    EXPECT_EQ(t0, ground);
    for (double nbar : {0.1, 0.5, 3.0, 10.0}) EXPECT_NEAR(thermal_state(30, nbar).trace().real(), 1.0, 1e-15);
}

TEST(ThermalState, MeanOccupationMatchesGeometricSeries) {
    // Σ n r^n / Σ r^n with r = 1/3, d = 30, evaluated in high precision: 0.5 − 1.457e−13.
    const auto rho = thermal_state(30, 0.5);
    EXPECT_NEAR(trace_of_product(rho, number_operator(30)).real(), 0.5, 1e-8);
    EXPECT_NEAR(trace_of_product(rho, number_operator(30)).real(), 0.49999999999985429, 1e-14);
}

TEST(ThermalState, Errors) {
    EXPECT_THROW(thermal_state(5, -0.1), BadOccupation);
    EXPECT_THROW(thermal_state(1, 0.5), BadDimension);
}

TEST(DensityMatrix, Validation) {
    EXPECT_NO_THROW(DensityMatrix(thermal_state(4, 1.0)));
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), InvalidState);  // trace 2
    EXPECT_THROW(DensityMatrix(ComplexMatrix::from_rows({{0.5, 0.1}, {0.0, 0.5}})), InvalidState);
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal({1.5, -0.5})), InvalidState);
    EXPECT_NO_THROW(DensityMatrix::unchecked(ComplexMatrix::identity(2)));
}

TEST(InitialState, PureExcitedVacuum) {
    SystemParams p;
    const auto rho = initial_state(p);
    const auto d = obs::diagnostics(rho);
    EXPECT_NEAR(d.purity, 1.0, 1e-15);
    EXPECT_NEAR(obs::population_inversion(rho, p), 1.0, 1e-15);
    EXPECT_EQ(obs::photon_number(rho, p), 0.0);
    EXPECT_EQ(rho.matrix()(p.index(0, kExcited, 0), p.index(0, kExcited, 0)), Complex(1.0));
}

TEST(InitialState, ThermalMechanics) {
    SystemParams p;
    p.d_m = 30;
    p.n_th0 = 0.5;
    const auto rho = initial_state(p);
    EXPECT_NEAR(obs::phonon_number(rho, p), 0.5, 1e-8);
    EXPECT_LT(obs::diagnostics(rho).purity, 1.0);
    EXPECT_NEAR(obs::population_inversion(rho, p), 1.0, 1e-14);
}
