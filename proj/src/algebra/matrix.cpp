#include "mahler/algebra/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace mahler {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("matrix entry count does not match shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<Rat> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RatMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

std::vector<std::vector<Int>> kernel_basis(const RatMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    // Clear denominators row by row; the kernel is unchanged.
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Int l(1);
        for (std::size_t j = 0; j < cols; ++j) l = lcm(l, Int(m(i, j).get_den()));
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = Int(m(i, j).get_num()) * (l / Int(m(i, j).get_den()));
    }

    // Bareiss fraction-free row echelon form.
    std::vector<std::size_t> pivots;
    Int prev(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && a[p][col] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[row]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Int t = a[row][col] * a[i][j] - a[i][col] * a[row][j];
                if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()))
                    throw std::logic_error("fraction-free elimination lost exactness");
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[row][col];
        pivots.push_back(col);
        ++row;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Int>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> x(cols);
        x[free] = 1;
        for (std::size_t r = pivots.size(); r-- > 0;) {
            std::size_t pc = pivots[r];
            Rat s(0);
            for (std::size_t j = pc + 1; j < cols; ++j)
                if (x[j] != 0 && a[r][j] != 0) s += Rat(a[r][j]) * x[j];
            x[pc] = -s / Rat(a[r][pc]);
        }
        Int den(1), g(0);
        for (const auto& v : x) den = lcm(den, Int(v.get_den()));
        std::vector<Int> iv(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            iv[j] = Int(x[j].get_num()) * (den / Int(x[j].get_den()));
            g = gcd(g, iv[j]);
        }
        for (auto& v : iv) v /= g;
        // Sign: last nonzero entry positive.
        for (std::size_t j = cols; j-- > 0;) {
            if (iv[j] == 0) continue;
            if (iv[j] < 0)
                for (auto& v : iv) v = -v;
            break;
        }
        basis.push_back(std::move(iv));
    }
    return basis;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m, inv = RatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a(p, col) == 0) ++p;
        if (p == n) return std::nullopt;
        if (p != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(col, j));
                std::swap(inv(p, j), inv(col, j));
            }
        Rat piv = 1 / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= piv;
            inv(col, j) *= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rat f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Rat determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    Rat det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a(p, col) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            Rat f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

MatRF::MatRF(std::size_t rows, std::size_t cols, std::vector<RatFun> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("matrix entry count does not match shape");
}

MatRF MatRF::identity(std::size_t n) {
    MatRF m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFun::constant(Rat(1));
    return m;
}

MatRF operator*(const MatRF& a, const MatRF& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    MatRF out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            RatFun s;
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                s = s + a(i, k) * b(k, j);
            }
            out(i, j) = std::move(s);
        }
    return out;
}

MatRF MatRF::compose_power(std::size_t k) const {
    MatRF out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i].compose_power(k);
    return out;
}

RatMatrix MatRF::at(const Rat& x) const {
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j)(x);
    return out;
}

RatFun MatRF::determinant() const {
    if (!square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = rows_;
    MatRF a = *this;
    RatFun det = RatFun::constant(Rat(1));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a(p, col).is_zero()) ++p;
        if (p == n) return RatFun();
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(col, j));
            det = -det;
        }
        det = det * a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col).is_zero()) continue;
            RatFun f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) = a(i, j) - f * a(col, j);
        }
    }
    return det;
}

Poly MatRF::denominator_lcm() const {
    Poly l = Poly::constant(Rat(1));
    for (const auto& e : a_) {
        if (e.is_polynomial()) continue;
        Poly g = gcd(l, e.den());
        l = divmod(l * e.den(), g).first.monic();
    }
    return l;
}

MatRF block_diagonal(const std::vector<MatRF>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) {
        if (!b.square()) throw std::invalid_argument("block_diagonal needs square blocks");
        n += b.rows();
    }
    MatRF out(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return out;
}

std::string to_string(const MatRF& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += to_string(m(i, j));
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace mahler
