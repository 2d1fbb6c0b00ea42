// linalg.hpp — dense complex matrices, Kronecker products, Hermitian Jacobi
// eigenvalues and a scaling-and-squaring matrix exponential

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "optocav/errors.hpp"

namespace optocav {

using Complex = std::complex<double>;

/// Square dense complex matrix stored row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
        if (dim == 0) throw BadDimension("ComplexMatrix: dimension must be positive");
    }

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), data_(std::move(entries)) {
        if (dim == 0) throw BadDimension("ComplexMatrix: dimension must be positive");
        if (data_.size() != dim * dim)
            throw DimensionMismatch("ComplexMatrix: expected " + std::to_string(dim * dim) +
                                    " entries, got " + std::to_string(data_.size()));
    }

    static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> diag) {
        ComplexMatrix m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<double> diag) {
        return diagonal(std::span<const double>(diag.begin(), diag.size()));
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        ComplexMatrix m(rows.size());
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != rows.size())
                throw DimensionMismatch("ComplexMatrix::from_rows: rows must form a square matrix");
            std::size_t j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    /// |v><v| for a state vector v.
    static ComplexMatrix outer(std::span<const Complex> v) {
        ComplexMatrix m(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * dim_ + c];
    }

    std::span<Complex> entries() noexcept { return data_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    Complex trace() const noexcept {
        Complex t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same(o, "operator+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same(o, "operator-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    ComplexMatrix& operator*=(Complex s) noexcept {
        for (auto& v : data_) v *= s;
        return *this;
    }

    /// this += s * o
    ComplexMatrix& add_scaled(const ComplexMatrix& o, Complex s) {
        check_same(o, "add_scaled");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
        return *this;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

    void check_same(const ComplexMatrix& o, const char* what) const {
        if (o.dim_ != dim_)
            throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(dim_) +
                                    " and " + std::to_string(o.dim_) + " differ");
    }

private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

namespace detail {

// y += a·x with plain real arithmetic (std::complex multiply carries NaN
// recovery branches that defeat vectorization in the inner loops).
inline void axpy(std::size_t n, Complex a, const Complex* x, Complex* y) noexcept {
    const double ar = a.real();
    const double ai = a.imag();
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    for (std::size_t j = 0; j < n; ++j) {
        const double xr = xs[2 * j];
        const double xi = xs[2 * j + 1];
        ys[2 * j] += ar * xr - ai * xi;
        ys[2 * j + 1] += ar * xi + ai * xr;
    }
}

} // namespace detail

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same(b, "matrix product");
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    const Complex* pa = a.entries().data();
    const Complex* pb = b.entries().data();
    Complex* pc = c.entries().data();
    for (std::size_t i = 0; i < n; ++i) {
        Complex* crow = pc + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = pa[i * n + k];
            if (aik == Complex{}) continue;
            detail::axpy(n, aik, pb + k * n, crow);
        }
    }
    return c;
}

/// Matrix-vector product.
inline std::vector<Complex> apply(const ComplexMatrix& a, std::span<const Complex> v) {
    if (v.size() != a.dim()) throw DimensionMismatch("apply: vector length differs from dim");
    std::vector<Complex> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) throw DimensionMismatch("inner: vector lengths differ");
    Complex s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

/// (a ⊗ b)[i·db + k, j·db + l] = a[i,j]·b[k,l]
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

/// Tr[a·b] without forming the product.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same(b, "trace_of_product");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * b(j, i);
    return s;
}

inline double max_abs(const ComplexMatrix& a) noexcept {
    double m = 0.0;
    for (const auto& v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same(b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline double frobenius_norm(const ComplexMatrix& a) noexcept {
    double s = 0.0;
    for (const auto& v : a.entries()) s += std::norm(v);
    return std::sqrt(s);
}

/// Maximum absolute column sum.
inline double one_norm(const ComplexMatrix& a) noexcept {
    double m = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) s += std::abs(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

/// max-entry |a − a†|
inline double hermiticity_defect(const ComplexMatrix& a) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

inline bool is_finite(const ComplexMatrix& a) noexcept {
    return std::all_of(a.entries().begin(), a.entries().end(), [](const Complex& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

/// (a + a†)/2, exactly Hermitian.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

struct Eigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

namespace detail {

inline constexpr double kJacobiRelTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

inline double off_diagonal_norm(const ComplexMatrix& a) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Cyclic complex Jacobi. On exit the diagonal of `a` holds the eigenvalues;
// `v`, when given, accumulates the rotations (a_in = v·diag·v†).
inline void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* v) {
    const std::size_t n = a.dim();
    const double scale = frobenius_norm(a);
    if (n == 1 || scale == 0.0) return;
    const double target = kJacobiRelTol * scale;
    const double skip = 1e-15 * scale / static_cast<double>(n);

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) return;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= skip) continue;
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Rotation V on (p,q): [[c, s], [-s·conj(u), c·conj(u)]], u = phase.
                const Complex vqp = -s * std::conj(phase);
                const Complex vqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp + vqp * akq;
                    a(k, q) = s * akp + vqq * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(vqp) * aqk;
                    a(q, k) = s * apk + std::conj(vqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
                if (v != nullptr) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = (*v)(k, p);
                        const Complex vkq = (*v)(k, q);
                        (*v)(k, p) = c * vkp + vqp * vkq;
                        (*v)(k, q) = s * vkp + vqq * vkq;
                    }
                }
            }
        }
    }
}

inline void require_hermitian(const ComplexMatrix& a, double tol) {
    const double defect = hermiticity_defect(a);
    if (!(defect <= tol))
        throw NotHermitian("matrix is not Hermitian: max |a - a^H| = " + std::to_string(defect) +
                           " exceeds tolerance " + std::to_string(tol));
}

// Connected components of the exact-nonzero pattern; a block-diagonal matrix
// (up to permutation) splits into independent eigenproblems.
inline std::vector<std::vector<std::size_t>> nonzero_blocks(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a(i, j) != Complex{} || a(j, i) != Complex{}) {
                const std::size_t ri = find(i);
                const std::size_t rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = blocks.size();
            blocks.emplace_back();
        }
        blocks[slot[r]].push_back(i);
    }
    return blocks;
}

} // namespace detail

/// All eigenvalues of a Hermitian matrix, ascending. Independent blocks of the
/// sparsity pattern are diagonalized separately.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol = 1e-10) {
    detail::require_hermitian(a, tol);
    std::vector<double> values;
    values.reserve(a.dim());
    for (const auto& block : detail::nonzero_blocks(a)) {
        if (block.size() == 1) {
            values.push_back(a(block[0], block[0]).real());
            continue;
        }
        ComplexMatrix sub(block.size());
        for (std::size_t i = 0; i < block.size(); ++i)
            for (std::size_t j = 0; j < block.size(); ++j) sub(i, j) = a(block[i], block[j]);
        sub = hermitian_part(sub);
        detail::jacobi_diagonalize(sub, nullptr);
        for (std::size_t i = 0; i < block.size(); ++i) values.push_back(sub(i, i).real());
    }
    std::sort(values.begin(), values.end());
    return values;
}

/// Eigenvalues and eigenvectors of a Hermitian matrix (full Jacobi, no blocking).
inline Eigensystem hermitian_eigensystem(const ComplexMatrix& a, double tol = 1e-10) {
    detail::require_hermitian(a, tol);
    ComplexMatrix work = hermitian_part(a);
    ComplexMatrix vecs = ComplexMatrix::identity(a.dim());
    detail::jacobi_diagonalize(work, &vecs);

    std::vector<std::size_t> order(a.dim());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return work(x, x).real() < work(y, y).real();
    });
    Eigensystem out{std::vector<double>(a.dim()), ComplexMatrix(a.dim())};
    for (std::size_t k = 0; k < a.dim(); ++k) {
        out.values[k] = work(order[k], order[k]).real();
        for (std::size_t i = 0; i < a.dim(); ++i) out.vectors(i, k) = vecs(i, order[k]);
    }
    return out;
}

inline constexpr std::size_t kMatrixExpMaxDim = 4096;

/// e^a by scaling and squaring with a degree-18 Taylor polynomial. The scaling
/// brings the 1-norm (and so every entry) of a/2^s to at most 0.5.
inline ComplexMatrix matrix_exp(const ComplexMatrix& a) {
    if (a.dim() > kMatrixExpMaxDim)
        throw DimensionTooLarge("matrix_exp: dim " + std::to_string(a.dim()) + " exceeds " +
                                std::to_string(kMatrixExpMaxDim));
    if (!is_finite(a)) throw NonFinite("matrix_exp: input has non-finite entries");

    const double norm = one_norm(a);
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const ComplexMatrix x = a * std::ldexp(1.0, -squarings);

    ComplexMatrix result = ComplexMatrix::identity(a.dim());
    ComplexMatrix term = ComplexMatrix::identity(a.dim());
    for (int k = 1; k <= 18; ++k) {
        term = term * x;
        term *= 1.0 / k;
        result += term;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    if (!is_finite(result)) throw NonFinite("matrix_exp: result overflowed");
    return result;
}

} // namespace optocav
