// sparse.hpp — row-compressed operator for fast operator·ρ and ρ·operator
// products against dense density matrices

#pragma once

#include <cstddef>
#include <vector>

#include "optocav/linalg.hpp"

namespace optocav {

class SparseOperator {
public:
    struct Entry {
        std::size_t col;
        Complex value;
    };

    explicit SparseOperator(const ComplexMatrix& m) : dim_(m.dim()), row_start_(m.dim() + 1, 0) {
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j)
                if (m(i, j) != Complex{}) entries_.push_back({j, m(i, j)});
            row_start_[i + 1] = entries_.size();
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t nonzeros() const noexcept { return entries_.size(); }

    /// y += alpha · S · x
    void left_multiply_add(const ComplexMatrix& x, ComplexMatrix& y, Complex alpha) const {
        check(x, y);
        const Complex* px = x.entries().data();
        Complex* py = y.entries().data();
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e)
                detail::axpy(dim_, alpha * entries_[e].value, px + entries_[e].col * dim_, py + i * dim_);
    }

    /// y += alpha · x · S
    void right_multiply_add(const ComplexMatrix& x, ComplexMatrix& y, Complex alpha) const {
        check(x, y);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t k = 0; k < dim_; ++k) {
                const Complex xik = x(i, k);
                if (xik == Complex{}) continue;
                const Complex a = alpha * xik;
                for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e) {
                    const auto& ent = entries_[e];
                    const Complex v = ent.value;
                    Complex& target = y(i, ent.col);
                    target = Complex(target.real() + a.real() * v.real() - a.imag() * v.imag(),
                                     target.imag() + a.real() * v.imag() + a.imag() * v.real());
                }
            }
    }

private:
    void check(const ComplexMatrix& x, const ComplexMatrix& y) const {
        if (x.dim() != dim_ || y.dim() != dim_)
            throw DimensionMismatch("SparseOperator: operand dimension mismatch");
    }

    std::size_t dim_;
    std::vector<std::size_t> row_start_;
    std::vector<Entry> entries_;
};

} // namespace optocav
