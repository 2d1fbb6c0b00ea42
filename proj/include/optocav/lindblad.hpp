// lindblad.hpp — dissipative master-equation right-hand side, fixed-step RK4
// integration with per-sample diagnostics, and a matrix-exponential oracle

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optocav/errors.hpp"
#include "optocav/hilbert.hpp"
#include "optocav/linalg.hpp"
#include "optocav/observables.hpp"
#include "optocav/sparse.hpp"

namespace optocav::lindblad {

/// L[o]ρ = o†oρ/2 − oρo† + ρo†o/2
inline ComplexMatrix dissipator(const ComplexMatrix& op, const ComplexMatrix& rho) {
    op.check_same(rho, "dissipator");
    const auto od = dagger(op);
    const auto odo = od * op;
    ComplexMatrix out = 0.5 * (odo * rho);
    out -= op * rho * od;
    out.add_scaled(rho * odo, 0.5);
    return out;
}

struct JumpOperator {
    std::string label;
    double rate;
    ComplexMatrix op;  // unscaled; the channel enters as −rate·L[op]ρ
};

/// Channels κ L[c], γ L[σ−], (n_th+1)μ L[b], n_th μ L[b†]; zero-rate channels are omitted.
inline std::vector<JumpOperator> jump_operators(const SystemParams& p) {
    p.validate();
    const ModeOperators ops(p);
    std::vector<JumpOperator> out;
    auto add = [&](const char* label, double rate, const ComplexMatrix& op) {
        if (rate > 0.0) out.push_back({label, rate, op});
    };
    add("cavity", p.kappa, ops.c);
    add("atom", p.gamma, ops.sigma_m);
    add("mech_down", (p.n_th + 1.0) * p.mu, ops.b);
    add("mech_up", p.n_th * p.mu, dagger(ops.b));
    return out;
}

/// dρ/dt = −i[H,ρ] − Σ_k rate_k L[o_k]ρ, evaluated as
/// −i(Kρ − ρK†) + Σ_k rate_k o_k ρ o_k† with K = H − (i/2)Σ_k rate_k o_k†o_k.
class Liouvillian {
public:
    Liouvillian(const ComplexMatrix& hamiltonian, const std::vector<JumpOperator>& jumps)
        : Liouvillian(effective_hamiltonian(hamiltonian, jumps), jumps, Tag{}) {}

    Liouvillian(const SystemParams& p, const ComplexMatrix& hamiltonian)
        : Liouvillian(hamiltonian, jump_operators(p)) {}

    std::size_t dim() const noexcept { return dim_; }

    /// out = L(ρ). Not thread-safe on a shared instance (uses an internal scratch buffer).
    void apply(const ComplexMatrix& rho, ComplexMatrix& out) {
        std::fill(out.entries().begin(), out.entries().end(), Complex{});
        const Complex minus_i{0.0, -1.0};
        k_.left_multiply_add(rho, out, minus_i);
        k_dag_.right_multiply_add(rho, out, -minus_i);
        for (const auto& ch : channels_) {
            std::fill(scratch_.entries().begin(), scratch_.entries().end(), Complex{});
            ch.op.left_multiply_add(rho, scratch_, 1.0);
            ch.op_dag.right_multiply_add(scratch_, out, ch.rate);
        }
    }

    ComplexMatrix operator()(const ComplexMatrix& rho) {
        ComplexMatrix out(dim_);
        apply(rho, out);
        return out;
    }

    /// dim²×dim² matrix acting on column-stacked vec(ρ) (index j·dim + i for ρ[i,j]).
    ComplexMatrix superoperator() {
        const std::size_t n = dim_;
        ComplexMatrix sup(n * n);
        ComplexMatrix basis(n);
        ComplexMatrix image(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                basis(i, j) = 1.0;
                apply(basis, image);
                basis(i, j) = 0.0;
                const std::size_t col = j * n + i;
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t r = 0; r < n; ++r) sup(c * n + r, col) = image(r, c);
            }
        return sup;
    }

private:
    struct Channel {
        double rate;
        SparseOperator op;
        SparseOperator op_dag;
    };

    struct Tag {};

    Liouvillian(const ComplexMatrix& k, const std::vector<JumpOperator>& jumps, Tag)
        : dim_(k.dim()), k_(k), k_dag_(dagger(k)), scratch_(k.dim()) {
        for (const auto& j : jumps) {
            j.op.check_same(k, "Liouvillian jump operator");
            channels_.push_back(Channel{j.rate, SparseOperator(j.op), SparseOperator(dagger(j.op))});
        }
    }

    static ComplexMatrix effective_hamiltonian(const ComplexMatrix& h, const std::vector<JumpOperator>& jumps) {
        ComplexMatrix k = h;
        for (const auto& j : jumps) {
            j.op.check_same(h, "Liouvillian jump operator");
            k.add_scaled(dagger(j.op) * j.op, Complex(0.0, -0.5 * j.rate));
        }
        return k;
    }

    std::size_t dim_;
    SparseOperator k_;
    SparseOperator k_dag_;
    std::vector<Channel> channels_;
    ComplexMatrix scratch_;
};

/// Full right-hand side for parameters p and Hamiltonian H.
inline ComplexMatrix liouvillian_apply(const ComplexMatrix& rho, const SystemParams& p,
                                       const ComplexMatrix& hamiltonian) {
    if (rho.dim() != hamiltonian.dim() || rho.dim() != p.dim())
        throw DimensionMismatch("liouvillian_apply: rho, H and params disagree on dimension");
    detail::require_hermitian(hamiltonian, 1e-10);
    Liouvillian l(p, hamiltonian);
    return l(rho);
}

struct EvolutionSpec {
    static constexpr double kMaxStep = 0.02;

    double t_end{0.0};
    double dt{0.005};
    std::size_t sample_stride{10};
    SystemParams params{};

    void validate() const {
        params.validate();
        if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
        if (!(t_end >= dt) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be >= dt");
        if (dt > kMaxStep) throw InvalidArgument("dt must be <= 0.02");
        if (sample_stride < 1) throw InvalidArgument("sample_stride must be >= 1");
    }

    /// Number of uniform steps of size ≤ dt that land exactly on t_end.
    std::size_t steps() const noexcept {
        const double ratio = t_end / dt;
        const double nearest = std::round(ratio);
        if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
            return static_cast<std::size_t>(nearest);
        return static_cast<std::size_t>(std::ceil(ratio));
    }
};

struct TimeSeries {
    struct Row {
        double t;
        double delta_p;
        double n_b;
        double n_c;
        double trace_error;
        double herm_error;
        double min_eig;
    };

    std::vector<Row> rows;
    std::optional<ComplexMatrix> final_rho;
};

class UnstableIntegration : public Error {
public:
    UnstableIntegration(const std::string& what, TimeSeries partial)
        : Error(what), partial_(std::move(partial)) {}

    const TimeSeries& partial() const noexcept { return partial_; }

private:
    TimeSeries partial_;
};

inline constexpr double kMaxTraceError = 1e-6;
inline constexpr double kAbortMinEig = -1e-5;

/// Called at every recorded sample with the current time and state.
using SampleObserver = std::function<void(double, const ComplexMatrix&)>;

/// Classic fixed-step RK4 with per-step re-Hermitization.
inline TimeSeries integrate(const DensityMatrix& rho0, const EvolutionSpec& spec,
                            const SampleObserver& observer = {}) {
    spec.validate();
    const auto& p = spec.params;
    if (rho0.dim() != p.dim())
        throw DimensionMismatch("integrate: initial state dim " + std::to_string(rho0.dim()) +
                                " does not match params dim " + std::to_string(p.dim()));

    Liouvillian rhs(p, build_hamiltonian(p));
    const obs::Measurements meas(p);
    const std::size_t n_steps = spec.steps();
    const double h = spec.t_end / static_cast<double>(n_steps);

    TimeSeries series;
    series.rows.reserve(n_steps / spec.sample_stride + 2);

    auto record = [&](double t, const ComplexMatrix& rho) {
        const auto o = meas.measure(rho);
        series.rows.push_back({t, o.delta_p, o.n_b, o.n_c, o.trace_error, o.herm_error, o.min_eig});
        if (observer) observer(t, rho);
        if (!(std::abs(o.trace_error) <= kMaxTraceError) || !(o.min_eig >= kAbortMinEig)) {
            series.final_rho = rho;
            throw UnstableIntegration("integration became unstable at t = " + std::to_string(t) +
                                          " (trace error " + std::to_string(o.trace_error) +
                                          ", min eigenvalue " + std::to_string(o.min_eig) + ")",
                                      std::move(series));
        }
    };

    ComplexMatrix rho = rho0.matrix();
    const std::size_t n = rho.dim();
    ComplexMatrix k1(n), k2(n), k3(n), k4(n), stage(n);
    auto combine = [&](const ComplexMatrix& k, double w) {
        auto s = stage.entries();
        auto r = rho.entries();
        auto kk = k.entries();
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = r[i] + w * kk[i];
    };

    record(0.0, rho);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        rhs.apply(rho, k1);
        combine(k1, 0.5 * h);
        rhs.apply(stage, k2);
        combine(k2, 0.5 * h);
        rhs.apply(stage, k3);
        combine(k3, h);
        rhs.apply(stage, k4);

        auto r = rho.entries();
        const double w = h / 6.0;
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] += w * (k1.entries()[i] + 2.0 * k2.entries()[i] + 2.0 * k3.entries()[i] + k4.entries()[i]);
        rho = hermitian_part(rho);

        if (step % spec.sample_stride == 0 || step == n_steps) {
            const double t = step == n_steps ? spec.t_end : static_cast<double>(step) * h;
            record(t, rho);
        }
    }
    series.final_rho = std::move(rho);
    return series;
}

inline constexpr std::size_t kOracleMaxDim = 64;

/// Evolution by exponentiating the vectorized Liouvillian; independent of integrate().
inline DensityMatrix oracle_evolve(const DensityMatrix& rho0, const SystemParams& p, double t) {
    if (p.dim() > kOracleMaxDim)
        throw DimensionTooLarge("oracle_evolve: system dim " + std::to_string(p.dim()) + " exceeds " +
                                std::to_string(kOracleMaxDim));
    if (rho0.dim() != p.dim()) throw DimensionMismatch("oracle_evolve: state dim does not match params");
    Liouvillian l(p, build_hamiltonian(p));
    auto sup = l.superoperator();
    sup *= t;
    const auto propagator = matrix_exp(sup);

    const std::size_t n = p.dim();
    std::vector<Complex> vec(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) vec[j * n + i] = rho0.matrix()(i, j);
    const auto out = optocav::apply(propagator, vec);
    ComplexMatrix rho(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) rho(i, j) = out[j * n + i];
    return DensityMatrix::unchecked(std::move(rho));
}

struct ConvergenceReport {
    std::size_t d_m_low;
    std::size_t d_m_high;
    double max_delta_p_dev;
    double max_n_b_dev;
};

/// Runs the same evolution at d_m and d_m + d_m_step and compares observables sample by sample.
inline ConvergenceReport convergence_check(const SystemParams& p, const EvolutionSpec& spec,
                                           std::size_t d_m_step) {
    if (d_m_step < 1) throw InvalidArgument("convergence_check: d_m_step must be >= 1");
    auto run_at = [&spec, &p](std::size_t d_m) {
        EvolutionSpec s = spec;
        s.params = p;
        s.params.d_m = d_m;
        return integrate(initial_state(s.params), s);
    };
    auto low = std::async(std::launch::async, run_at, p.d_m);
    auto high = std::async(std::launch::async, run_at, p.d_m + d_m_step);
    const auto a = low.get();
    const auto b = high.get();

    ConvergenceReport report{p.d_m, p.d_m + d_m_step, 0.0, 0.0};
    const std::size_t rows = std::min(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < rows; ++i) {
        report.max_delta_p_dev = std::max(report.max_delta_p_dev, std::abs(a.rows[i].delta_p - b.rows[i].delta_p));
        report.max_n_b_dev = std::max(report.max_n_b_dev, std::abs(a.rows[i].n_b - b.rows[i].n_b));
    }
    return report;
}

} // namespace optocav::lindblad
