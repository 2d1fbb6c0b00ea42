// analytic.hpp — closed-form three-level model: dressed atom-cavity states,
// the effective polariton-phonon Hamiltonian and population-inversion formulas

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "optocav/errors.hpp"
#include "optocav/hilbert.hpp"
#include "optocav/linalg.hpp"

namespace optocav::analytic {

/// Scalars of the three-level eigen-decomposition.
struct DerivedParams {
    double Omega_g;      // polariton-phonon splitting √((ω_m − 2g_ca)² + g_cm²)
    double eta;          // mixing ratio of the |−,1> and |+,0> components
    double Nnorm;        // (1 + η²)^(−1/2)
    double xi;           // (1 − η²)/(1 + η²)
    double Omega_plus;   // (ω_m + Ω_g)/2
    double Omega_minus;  // (ω_m − Ω_g)/2
    double Omega_ca;     // ω_m/2 + g_ca
};

inline void require_coupling(const SystemParams& p, const char* who) {
    if (!(p.g_cm > 0.0))
        throw DegenerateCoupling(std::string(who) + ": g_cm must be > 0 (eta is undefined at g_cm = 0)");
}

inline DerivedParams derived_params(const SystemParams& p) {
    require_coupling(p, "derived_params");
    const double detuning = p.omega_m - 2.0 * p.g_ca;
    const double omega_g = std::hypot(detuning, p.g_cm);
    const double eta = (omega_g - detuning) / p.g_cm;
    const double eta2 = eta * eta;
    return DerivedParams{
        .Omega_g = omega_g,
        .eta = eta,
        .Nnorm = 1.0 / std::sqrt(1.0 + eta2),
        .xi = (1.0 - eta2) / (1.0 + eta2),
        .Omega_plus = 0.5 * (p.omega_m + omega_g),
        .Omega_minus = 0.5 * (p.omega_m - omega_g),
        .Omega_ca = 0.5 * p.omega_m + p.g_ca,
    };
}

/// Atom-cavity part ω̃_c c†c + (ω̃_a/2)σ_z + g_ca(σ_+c + σ_−c†), embedded in the full space.
inline ComplexMatrix build_h_ca(const SystemParams& p) {
    p.validate();
    const ModeOperators ops(p);
    const auto cd = dagger(ops.c);
    const bool rotating = p.frame == Frame::rotating_at_omega_c;
    const double wc = rotating ? 0.0 : p.omega_c;
    const double wa = rotating ? p.omega_a - p.omega_c : p.omega_a;
    ComplexMatrix h = wc * (cd * ops.c);
    h.add_scaled(ops.sigma_z, 0.5 * wa);
    h.add_scaled(dagger(ops.sigma_m) * ops.c + ops.sigma_m * cd, p.g_ca);
    return h;
}

struct DressedStates {
    std::vector<Complex> plus;   // (|1,g> + |0,e>)/√2 at mechanical vacuum
    std::vector<Complex> minus;  // (|1,g> − |0,e>)/√2 at mechanical vacuum
    double energy_plus;          // ω̃_a/2 + g_ca
    double energy_minus;         // ω̃_a/2 − g_ca
};

inline DressedStates dressed_basis_vectors(const SystemParams& p) {
    p.validate();
    if (std::abs(p.omega_a - p.omega_c) > 1e-12 * std::max(1.0, std::abs(p.omega_c)))
        throw OffResonance("dressed_basis_vectors: requires omega_a == omega_c");
    const double r = 1.0 / std::sqrt(2.0);
    const auto one_g = basis_state(p, 1, kGround, 0);
    const auto zero_e = basis_state(p, 0, kExcited, 0);
    DressedStates out{std::vector<Complex>(p.dim()), std::vector<Complex>(p.dim()), 0.0, 0.0};
    for (std::size_t i = 0; i < p.dim(); ++i) {
        out.plus[i] = r * (one_g[i] + zero_e[i]);
        out.minus[i] = r * (one_g[i] - zero_e[i]);
    }
    const double wa = p.frame == Frame::rotating_at_omega_c ? p.omega_a - p.omega_c : p.omega_a;
    out.energy_plus = 0.5 * wa + p.g_ca;
    out.energy_minus = 0.5 * wa - p.g_ca;
    return out;
}

/// Effective Hamiltonian g_ca σ'_z + ω_m b'†b' − (g_cm/2)(σ'_+ b' + σ'_− b'†) in
/// the ordered basis (|−,0>, |+,0>, |−,1>).
inline ComplexMatrix build_h_eff_3d(const SystemParams& p) {
    ComplexMatrix h(3);
    h(0, 0) = -p.g_ca;
    h(1, 1) = p.g_ca;
    h(2, 2) = -p.g_ca + p.omega_m;
    h(1, 2) = -0.5 * p.g_cm;
    h(2, 1) = -0.5 * p.g_cm;
    return h;
}

struct Amplitudes {
    Complex a_0e0;  // amplitude on |0,e,0'>
    Complex a_0e1;  // amplitude on |0,e,1'>

    double excited_probability() const noexcept { return std::norm(a_0e0) + std::norm(a_0e1); }
};

inline Amplitudes amplitudes(double t, const SystemParams& p) {
    const auto d = derived_params(p);
    const Complex i{0.0, 1.0};
    const double n2 = d.Nnorm * d.Nnorm;
    const Complex carrier = std::exp(-i * (0.5 * p.omega_m * t));
    const double half = 0.5 * d.Omega_g * t;
    Amplitudes out;
    out.a_0e1 = -i * n2 * d.eta * carrier * std::sin(half);
    out.a_0e0 = 0.5 * (n2 * carrier * (d.eta * d.eta * std::exp(-i * half) + std::exp(i * half)) +
                       std::exp(i * (p.g_ca * t)));
    return out;
}

/// ΔP = cos(Ω_ca t)cos(Ω_g t/2) + ξ sin(Ω_ca t)sin(Ω_g t/2)
inline double delta_p_general(double t, const SystemParams& p) {
    const auto d = derived_params(p);
    const double half = 0.5 * d.Omega_g * t;
    return std::cos(d.Omega_ca * t) * std::cos(half) + d.xi * std::sin(d.Omega_ca * t) * std::sin(half);
}

/// ΔP = cos(2 g_ca t)·cos(g_cm t/2); exact on resonance ω_m = 2 g_ca.
inline double delta_p_resonant(double t, const SystemParams& p) {
    return std::cos(2.0 * p.g_ca * t) * std::cos(0.5 * p.g_cm * t);
}

} // namespace optocav::analytic
