#include "mahler/algebra/rational.hpp"

#include "mahler/errors.hpp"

#include <cctype>

namespace mahler {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rational(std::string_view text) {
    std::string_view body = text;
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    Int n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
    Rat r(negative ? Int(-n) : n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }
std::string to_string(const Int& n) { return n.get_str(); }

Int pow(const Int& base, unsigned long exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Rat pow(const Rat& base, unsigned long exp) {
    Rat out(pow(Int(base.get_num()), exp), pow(Int(base.get_den()), exp));
    return out;
}

Int floor(const Rat& r) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

Int ceil(const Rat& r) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

std::size_t bit_length(const Int& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Int lcm(const Int& a, const Int& b) {
    Int out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Int gcd(const Int& a, const Int& b) {
    Int out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

}  // namespace mahler
