// hilbert.hpp — truncated cavity ⊗ atom ⊗ mechanics space, the hybrid
// atom-optomechanical Hamiltonian and initial states

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "optocav/errors.hpp"
#include "optocav/linalg.hpp"

namespace optocav {

enum class Frame { lab, rotating_at_omega_c };

enum class Slot { cavity, atom, mech };

/// Physical parameters; frequencies and rates in units of the mechanical frequency.
struct SystemParams {
    double omega_c{100.0};
    double omega_a{100.0};
    double omega_m{1.0};
    double g_ca{0.5};
    double g_cm{0.1};
    double kappa{0.0};
    double gamma{0.0};
    double mu{0.0};
    double n_th{0.0};
    double n_th0{0.0};
    std::size_t d_c{2};
    std::size_t d_m{6};
    Frame frame{Frame::rotating_at_omega_c};

    std::size_t dim() const noexcept { return d_c * 2 * d_m; }

    /// Throws InvalidArgument naming the first offending field.
    void validate() const {
        auto finite = [](const char* name, double v) {
            if (!std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be finite");
        };
        auto nonneg = [&](const char* name, double v) {
            finite(name, v);
            if (v < 0.0) throw InvalidArgument(std::string(name) + " must be >= 0");
        };
        finite("omega_c", omega_c);
        finite("omega_a", omega_a);
        if (omega_m != 1.0) throw InvalidArgument("omega_m must be 1 (it sets the unit system)");
        nonneg("g_ca", g_ca);
        nonneg("g_cm", g_cm);
        nonneg("kappa", kappa);
        nonneg("gamma", gamma);
        nonneg("mu", mu);
        nonneg("n_th", n_th);
        nonneg("n_th0", n_th0);
        if (d_c < 2) throw InvalidArgument("d_c must be >= 2");
        if (d_m < 2) throw InvalidArgument("d_m must be >= 2");
    }

    std::size_t slot_dim(Slot s) const noexcept {
        switch (s) {
        case Slot::cavity: return d_c;
        case Slot::atom: return 2;
        case Slot::mech: return d_m;
        }
        return 0;
    }

    /// Composite index of |n_c, s, n_m> with s = 0 for |e>, 1 for |g>.
    std::size_t index(std::size_t n_c, std::size_t s, std::size_t n_m) const noexcept {
        return (n_c * 2 + s) * d_m + n_m;
    }

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

inline constexpr std::size_t kExcited = 0;
inline constexpr std::size_t kGround = 1;

/// Density matrix with unit trace, Hermiticity and positivity checked on construction.
class DensityMatrix {
public:
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kHermTol = 1e-9;
    static constexpr double kMinEig = -1e-7;

    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
        const double trace_err = std::abs(mat_.trace() - 1.0);
        if (!(trace_err <= kTraceTol))
            throw InvalidState("density matrix trace differs from 1 by " + std::to_string(trace_err));
        const double herm = hermiticity_defect(mat_);
        if (!(herm <= kHermTol))
            throw InvalidState("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
        const auto eig = hermitian_eigenvalues(hermitian_part(mat_));
        if (eig.front() < kMinEig)
            throw InvalidState("density matrix has negative eigenvalue " + std::to_string(eig.front()));
    }

    /// Wraps a matrix produced by the engine without re-running the checks.
    static DensityMatrix unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m), Tag{}); }

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    std::size_t dim() const noexcept { return mat_.dim(); }

private:
    struct Tag {};
    DensityMatrix(ComplexMatrix m, Tag) : mat_(std::move(m)) {}

    ComplexMatrix mat_;
};

/// Bosonic lowering operator truncated to d levels.
inline ComplexMatrix annihilation(std::size_t d) {
    if (d < 2) throw BadDimension("annihilation: dimension must be >= 2, got " + std::to_string(d));
    ComplexMatrix a(d);
    for (std::size_t n = 0; n + 1 < d; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    return a;
}

inline ComplexMatrix number_operator(std::size_t d) {
    const auto a = annihilation(d);
    return dagger(a) * a;
}

// Atomic operators in the (|e>, |g>) basis.
inline ComplexMatrix sigma_z() { return ComplexMatrix::diagonal({1.0, -1.0}); }
inline ComplexMatrix sigma_minus() { return ComplexMatrix::from_rows({{0.0, 0.0}, {1.0, 0.0}}); }
inline ComplexMatrix sigma_plus() { return ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}); }
inline ComplexMatrix excited_projector() { return ComplexMatrix::diagonal({1.0, 0.0}); }
inline ComplexMatrix ground_projector() { return ComplexMatrix::diagonal({0.0, 1.0}); }

/// Lifts a single-subsystem operator to cavity ⊗ atom ⊗ mechanics.
inline ComplexMatrix embed(const ComplexMatrix& op, Slot slot, const SystemParams& p) {
    const std::size_t want = p.slot_dim(slot);
    if (op.dim() != want)
        throw DimensionMismatch("embed: operator dim " + std::to_string(op.dim()) +
                                " does not match slot dim " + std::to_string(want));
    const auto ic = ComplexMatrix::identity(p.d_c);
    const auto ia = ComplexMatrix::identity(2);
    const auto im = ComplexMatrix::identity(p.d_m);
    switch (slot) {
    case Slot::cavity: return kron(kron(op, ia), im);
    case Slot::atom: return kron(kron(ic, op), im);
    case Slot::mech: return kron(kron(ic, ia), op);
    }
    throw InvalidArgument("embed: unknown slot");
}

/// Embedded ladder and atomic operators of the composite space.
struct ModeOperators {
    ComplexMatrix c;        // cavity lowering
    ComplexMatrix b;        // mechanical lowering
    ComplexMatrix sigma_m;  // atomic lowering |g><e|
    ComplexMatrix sigma_z;

    explicit ModeOperators(const SystemParams& p)
        : c(embed(annihilation(p.d_c), Slot::cavity, p)),
          b(embed(annihilation(p.d_m), Slot::mech, p)),
          sigma_m(embed(optocav::sigma_minus(), Slot::atom, p)),
          sigma_z(embed(optocav::sigma_z(), Slot::atom, p)) {}
};

/// H = ω̃_c c†c + (ω̃_a/2)σ_z + g_ca(σ_+c + σ_−c†) + ω_m b†b − g_cm c†c(b + b†).
/// In the rotating frame ω̃_c = 0 and ω̃_a = ω_a − ω_c.
inline ComplexMatrix build_hamiltonian(const SystemParams& p) {
    p.validate();
    const ModeOperators ops(p);
    const auto cd = dagger(ops.c);
    const auto bd = dagger(ops.b);
    const auto sp = dagger(ops.sigma_m);
    const auto n_c = cd * ops.c;

    const bool rotating = p.frame == Frame::rotating_at_omega_c;
    const double wc = rotating ? 0.0 : p.omega_c;
    const double wa = rotating ? p.omega_a - p.omega_c : p.omega_a;

    ComplexMatrix h = wc * n_c;
    h.add_scaled(ops.sigma_z, 0.5 * wa);
    h.add_scaled(sp * ops.c + ops.sigma_m * cd, p.g_ca);
    h.add_scaled(bd * ops.b, p.omega_m);
    h.add_scaled(n_c * (ops.b + bd), -p.g_cm);
    // Remove rounding asymmetry so the result is Hermitian to the last bit.
    return hermitian_part(h);
}

/// N = c†c + |e><e|, conserved by the Hamiltonian.
inline ComplexMatrix excitation_number(const SystemParams& p) {
    return embed(number_operator(p.d_c), Slot::cavity, p) +
           embed(excited_projector(), Slot::atom, p);
}

/// Truncated thermal state of a single mode, renormalized to unit trace.
inline ComplexMatrix thermal_state(std::size_t d, double nbar) {
    if (d < 2) throw BadDimension("thermal_state: dimension must be >= 2, got " + std::to_string(d));
    if (!(nbar >= 0.0) || !std::isfinite(nbar))
        throw BadOccupation("thermal_state: occupation must be finite and >= 0");
    std::vector<double> w(d, 0.0);
    w[0] = 1.0;
    const double ratio = nbar / (1.0 + nbar);
    for (std::size_t n = 1; n < d; ++n) w[n] = w[n - 1] * ratio;
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= z;
    return ComplexMatrix::diagonal(w);
}

/// Composite basis vector |n_c, s, n_m>.
inline std::vector<Complex> basis_state(const SystemParams& p, std::size_t n_c, std::size_t s,
                                        std::size_t n_m) {
    if (n_c >= p.d_c || s > 1 || n_m >= p.d_m) throw InvalidArgument("basis_state: index out of range");
    std::vector<Complex> v(p.dim());
    v[p.index(n_c, s, n_m)] = 1.0;
    return v;
}

/// |0><0|_c ⊗ |e><e|_a ⊗ thermal(d_m, n_th0)
inline DensityMatrix initial_state(const SystemParams& p) {
    p.validate();
    auto vac = ComplexMatrix::zeros(p.d_c);
    vac(0, 0) = 1.0;
    return DensityMatrix(kron(kron(vac, excited_projector()), thermal_state(p.d_m, p.n_th0)));
}

} // namespace optocav
