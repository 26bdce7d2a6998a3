#pragma once

#include "mahler/algebra/ratfun.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

/// Dense exact rational matrix, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);
    static RatMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Rat> apply(const std::vector<Rat>& v) const;
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Basis of the right kernel via fraction-free elimination. Each vector is
/// scaled to coprime integers with its last nonzero entry positive.
std::vector<std::vector<Int>> kernel_basis(const RatMatrix& m);

/// Exact inverse; std::nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);
Rat determinant(const RatMatrix& m);

/// Matrix of rational functions in z.
class MatRF {
public:
    MatRF() = default;
    MatRF(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    MatRF(std::size_t rows, std::size_t cols, std::vector<RatFun> entries);
    static MatRF identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    RatFun& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const RatFun& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<RatFun>& entries() const noexcept { return a_; }

    friend MatRF operator*(const MatRF& a, const MatRF& b);
    friend bool operator==(const MatRF& a, const MatRF& b) = default;

    /// A(z^k).
    MatRF compose_power(std::size_t k) const;
    /// Entrywise value at x; throws std::domain_error at a pole of any entry.
    RatMatrix at(const Rat& x) const;
    RatFun determinant() const;
    /// Monic lcm of all entry denominators.
    Poly denominator_lcm() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RatFun> a_;
};

MatRF block_diagonal(const std::vector<MatRF>& blocks);

std::string to_string(const MatRF& m);

}  // namespace mahler
