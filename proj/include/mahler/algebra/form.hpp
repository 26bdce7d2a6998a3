#pragma once

#include "mahler/algebra/enclosure.hpp"
#include "mahler/algebra/poly.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace mahler {

using Exponents = std::vector<long>;

/// Sparse polynomial in X_0..X_{n-1} whose coefficients are polynomials in z.
///
/// Used for auxiliary forms R_k and for the binary and substituted forms of
/// the lacunary-series construction. Zero coefficients are never stored.
class AuxForm {
public:
    explicit AuxForm(std::size_t nvars = 0) : nvars_(nvars) {}

    std::size_t nvars() const noexcept { return nvars_; }
    const std::map<Exponents, Poly>& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds c * z^0 X^e (c may be a polynomial in z).
    void add_term(const Exponents& e, const Poly& c);
    /// Coefficient of X^e (zero when absent).
    Poly coeff(const Exponents& e) const;

    /// Maximum total X-degree; -1 for the zero form.
    long deg_x() const;
    /// Maximum z-degree over the coefficients; -1 for the zero form.
    long deg_z() const;
    bool is_homogeneous() const;
    bool z_free() const;

    /// Largest |coefficient| over every z^j X^e.
    Rat height() const;
    /// Scales to integer coefficients with content 1 and a positive leading term.
    AuxForm primitive() const;
    bool is_integral() const;

    /// R(z^k, X).
    AuxForm compose_z_power(std::size_t k) const;
    AuxForm scaled(const Poly& p) const;

    /// Value at z-free rational point x (z-free forms only).
    Rat evaluate(const std::vector<Rat>& x) const;
    /// Value at z = zval and X = x.
    Rat evaluate(const Rat& zval, const std::vector<Rat>& x) const;
    /// Interval value of a z-free form at x.
    Enclosure evaluate(const std::vector<Enclosure>& x) const;

    friend AuxForm operator+(const AuxForm& a, const AuxForm& b);
    friend AuxForm operator-(const AuxForm& a, const AuxForm& b);
    friend AuxForm operator*(const AuxForm& a, const AuxForm& b);
    friend bool operator==(const AuxForm& a, const AuxForm& b) = default;

private:
    std::size_t nvars_;
    std::map<Exponents, Poly> terms_;
};

/// Single-variable form X_i in n variables.
AuxForm variable(std::size_t nvars, std::size_t i);
AuxForm pow(const AuxForm& f, unsigned long e);

std::string to_string(const AuxForm& f);

}  // namespace mahler
