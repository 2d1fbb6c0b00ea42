// observables.hpp — population inversion, phonon/photon numbers and
// density-matrix health diagnostics

#pragma once

#include <string>

#include "optocav/hilbert.hpp"
#include "optocav/linalg.hpp"

namespace optocav::obs {

struct Diagnostics {
    double trace_error;  // Tr ρ − 1
    double herm_error;   // max-entry |ρ − ρ†|
    double min_eig;      // smallest eigenvalue of the Hermitian part
    double purity;       // Tr ρ²
};

struct ObservableSet {
    double delta_p;
    double n_b;
    double n_c;
    double purity;
    double trace_error;
    double herm_error;
    double min_eig;
};

inline Diagnostics diagnostics(const ComplexMatrix& rho) {
    return Diagnostics{
        .trace_error = rho.trace().real() - 1.0,
        .herm_error = hermiticity_defect(rho),
        .min_eig = hermitian_eigenvalues(hermitian_part(rho)).front(),
        .purity = trace_of_product(rho, rho).real(),
    };
}

inline Diagnostics diagnostics(const DensityMatrix& rho) { return diagnostics(rho.matrix()); }

/// Embedded measurement operators, built once per system and reused per sample.
class Measurements {
public:
    explicit Measurements(const SystemParams& p)
        : dim_(p.dim()),
          sigma_z_(embed(optocav::sigma_z(), Slot::atom, p)),
          n_b_(embed(number_operator(p.d_m), Slot::mech, p)),
          n_c_(embed(number_operator(p.d_c), Slot::cavity, p)) {}

    /// Tr[ρ σ_z]; the imaginary part is discarded.
    double population_inversion(const ComplexMatrix& rho) const {
        check(rho);
        return trace_of_product(rho, sigma_z_).real();
    }

    /// Tr[ρ b†b] with the bare (undisplaced) mechanical operator.
    double phonon_number(const ComplexMatrix& rho) const {
        check(rho);
        return trace_of_product(rho, n_b_).real();
    }

    double photon_number(const ComplexMatrix& rho) const {
        check(rho);
        return trace_of_product(rho, n_c_).real();
    }

    ObservableSet measure(const ComplexMatrix& rho) const {
        const auto d = diagnostics(rho);
        return ObservableSet{
            .delta_p = population_inversion(rho),
            .n_b = phonon_number(rho),
            .n_c = photon_number(rho),
            .purity = d.purity,
            .trace_error = d.trace_error,
            .herm_error = d.herm_error,
            .min_eig = d.min_eig,
        };
    }

private:
    void check(const ComplexMatrix& rho) const {
        if (rho.dim() != dim_)
            throw DimensionMismatch("observable: density matrix dim " + std::to_string(rho.dim()) +
                                    " does not match system dim " + std::to_string(dim_));
    }

    std::size_t dim_;
    ComplexMatrix sigma_z_;
    ComplexMatrix n_b_;
    ComplexMatrix n_c_;
};

inline double population_inversion(const DensityMatrix& rho, const SystemParams& p) {
    return Measurements(p).population_inversion(rho.matrix());
}

inline double phonon_number(const DensityMatrix& rho, const SystemParams& p) {
    return Measurements(p).phonon_number(rho.matrix());
}

inline double photon_number(const DensityMatrix& rho, const SystemParams& p) {
    return Measurements(p).photon_number(rho.matrix());
}

} // namespace optocav::obs
