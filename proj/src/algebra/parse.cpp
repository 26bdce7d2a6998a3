#include "mahler/algebra/parse.hpp"

#include "mahler/errors.hpp"

#include <cctype>
#include <string>

namespace mahler {

namespace {

constexpr unsigned long kMaxExponent = 1'000'000;

template <typename Value>
class Parser {
public:
    Parser(std::string_view text, bool allow_division) : s_(text), div_(allow_division) {}

    Value parse() {
        Value v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool peek_digit() {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    Int digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Int(std::string(s_.substr(start, pos_ - start)));
    }

    Value expr() {
        Value v = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                v = v + term();
            } else if (peek('-')) {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    Value term() {
        Value v = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                v = v * factor();
            } else if (div_ && peek('/')) {
                std::size_t at = pos_++;
                Value d = factor();
                if constexpr (std::is_same_v<Value, RatFun>) {
                    if (d.is_zero()) throw ParseError("division by zero", at);
                    v = v / d;
                }
            } else {
                skip();
                if (pos_ < s_.size() && (s_[pos_] == 'z' || s_[pos_] == '(' ||
                                         std::isdigit(static_cast<unsigned char>(s_[pos_]))))
                    fail("implicit multiplication is not allowed");
                return v;
            }
        }
    }

    Value factor() {
        Value b = base();
        if (peek('^')) {
            ++pos_;
            std::size_t at = pos_;
            Int e = digits();
            if (e > kMaxExponent) throw ParseError("exponent too large", at);
            return power(b, e.get_ui());
        }
        return b;
    }

    Value power(const Value& b, unsigned long e) {
        Value r = Value(Poly::constant(Rat(1)));
        Value base = b;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    Value base() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == 'z') {
            ++pos_;
            return Value(Poly::z());
        }
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return v;
        }
        if (c == '-') {
            ++pos_;
            return Value(Poly()) - factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Value(Poly::constant(rational()));
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Rat rational() {
        Int num = digits();
        if (peek('/')) {
            std::size_t slash = pos_;
            ++pos_;
            if (!peek_digit()) {
                if (div_) {
                    // Not a rational literal; let term() treat '/' as division.
                    pos_ = slash;
                    return Rat(num);
                }
                fail("expected denominator digits");
            }
            Int den = digits();
            if (den == 0) throw ParseError("zero denominator", slash + 1);
            Rat r(num, den);
            r.canonicalize();
            return r;
        }
        return Rat(num);
    }

    std::string_view s_;
    bool div_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text) { return Parser<Poly>(text, false).parse(); }

RatFun parse_ratfun(std::string_view text) { return Parser<RatFun>(text, true).parse(); }

}  // namespace mahler
