#pragma once

#include "mahler/algebra/poly.hpp"
#include "mahler/algebra/ratfun.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mahler {

/// a_0(z) f(z) + a_1(z) f(z^q) + ... + a_m(z) f(z^{q^m}) = b(z)
/// together with prescribed leading coefficients u(0..s-1) of f.
class MahlerEquation {
public:
    /// Throws InvalidInput unless q >= 2, a_0 != 0, a_m != 0, and
    /// m >= 1 or (m = 0 and b != 0).
    MahlerEquation(long q, std::vector<Poly> coeffs, Poly rhs = {}, std::vector<Rat> seeds = {},
                   std::string name = {});

    /// Clears denominators by the lcm of all denominators, scaled so that its
    /// lowest nonzero coefficient is 1.
    static MahlerEquation from_rational(long q, const std::vector<RatFun>& coeffs, const RatFun& rhs,
                                        std::vector<Rat> seeds = {}, std::string name = {});

    long q() const noexcept { return q_; }
    std::size_t order() const noexcept { return a_.size() - 1; }
    const std::vector<Poly>& coeffs() const noexcept { return a_; }
    const Poly& coeff(std::size_t j) const { return a_.at(j); }
    const Poly& rhs() const noexcept { return rhs_; }
    bool homogeneous() const noexcept { return rhs_.is_zero(); }
    const std::vector<Rat>& seeds() const noexcept { return seeds_; }
    const std::string& name() const noexcept { return name_; }

    MahlerEquation with_seeds(std::vector<Rat> seeds) const;

    /// Size of the initial block floor(val(a_0)/(q-1)) + 1 that the
    /// recurrence cannot reach on its own.
    std::size_t initial_block() const;

private:
    long q_;
    std::vector<Poly> a_;
    Poly rhs_;
    std::vector<Rat> seeds_;
    std::string name_;
};

}  // namespace mahler
