#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

#include "makespan/error.hpp"

namespace makespan {

/**
 * @brief Exact rational number backed by GMP.
 *
 * Always kept in lowest terms with a positive denominator; every arithmetic
 * result is exact. Division by zero throws DivisionByZero.
 */
class Rational {
  public:
    Rational() = default;

    template <std::integral I>
    Rational(I value) : q_(static_cast<long>(value)) {}  // NOLINT: implicit by design of the scalar concept

    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) {
            throw DivisionByZero();
        }
        q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        q_.canonicalize();
    }

    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "-12", "2.5", "1.25e3" or "7/3" exactly.
    static Rational parse(std::string_view text);

    const mpq_class &raw() const noexcept { return q_; }

    int sign() const noexcept { return sgn(q_); }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    /// "p" when the denominator is 1, "p/q" otherwise.
    std::string to_string() const {
        if (q_.get_den() == 1) {
            return q_.get_num().get_str();
        }
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    /// Nearest double (ties to even); mpq_get_d alone truncates.
    double to_double() const {
        const int sign = mpq_sgn(q_.get_mpq_t());
        if (sign == 0) {
            return 0.0;
        }
        mpz_class num = abs(q_.get_num());
        const mpz_class &den = q_.get_den();
        // Scale so the integer quotient has exactly 64 bits, fold the remainder into
        // a sticky bit, and let the uint64 -> double conversion do the rounding.
        const long shift = 64 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
        mpz_class scaled_den = den;
        if (shift >= 0) {
            num <<= static_cast<unsigned long>(shift);
        } else {
            scaled_den <<= static_cast<unsigned long>(-shift);
        }
        mpz_class quot;
        mpz_class rem;
        mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), scaled_den.get_mpz_t());
        long extra = 0;
        while (mpz_sizeinbase(quot.get_mpz_t(), 2) > 64) {
            if (mpz_odd_p(quot.get_mpz_t())) {
                rem = 1;
            }
            quot >>= 1;
            ++extra;
        }
        std::uint64_t bits = 0;
        mpz_export(&bits, nullptr, -1, sizeof bits, 0, 0, quot.get_mpz_t());
        if (rem != 0) {
            bits |= 1;
        }
        const double magnitude = std::ldexp(static_cast<double>(bits), static_cast<int>(extra - shift));
        return sign < 0 ? -magnitude : magnitude;
    }

    Rational floor() const {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return Rational(mpq_class(f));
    }

    Rational &operator+=(const Rational &o) {
        q_ += o.q_;
        return *this;
    }
    Rational &operator-=(const Rational &o) {
        q_ -= o.q_;
        return *this;
    }
    Rational &operator*=(const Rational &o) {
        q_ *= o.q_;
        return *this;
    }
    Rational &operator/=(const Rational &o) {
        if (sgn(o.q_) == 0) {
            throw DivisionByZero();
        }
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

  private:
    mpq_class q_;
};

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Splits a decimal literal into sign, digit string and base-10 exponent.
// Accepts [+-]digits[.digits][(e|E)[+-]digits]; at least one digit required.
struct DecimalParts {
    bool negative = false;
    std::string digits;
    long exponent = 0;
};

inline DecimalParts split_decimal(std::string_view text) {
    DecimalParts parts;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        parts.negative = text[i] == '-';
        ++i;
    }
    bool any = false;
    while (i < text.size() && is_digit(text[i])) {
        parts.digits.push_back(text[i++]);
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && is_digit(text[i])) {
            parts.digits.push_back(text[i++]);
            --parts.exponent;
            any = true;
        }
    }
    if (!any) {
        throw UsageError("invalid number '" + std::string(text) + "'");
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        long e = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + i + (i < text.size() && text[i] == '+' ? 1 : 0),
                                               text.data() + text.size(), e);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw UsageError("invalid exponent in '" + std::string(text) + "'");
        }
        if (e > 4096 || e < -4096) {
            throw UsageError("exponent out of range in '" + std::string(text) + "'");
        }
        parts.exponent += e;
        i = text.size();
    }
    if (i != text.size()) {
        throw UsageError("invalid number '" + std::string(text) + "'");
    }
    return parts;
}

inline mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

inline mpz_class parse_integer(std::string_view text) {
    if (text.empty()) {
        throw UsageError("empty integer");
    }
    std::size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
    if (start == text.size()) {
        throw UsageError("invalid integer '" + std::string(text) + "'");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!is_digit(text[i])) {
            throw UsageError("invalid integer '" + std::string(text) + "'");
        }
    }
    mpz_class z(std::string(text.substr(start)), 10);
    return text[0] == '-' ? mpz_class(-z) : z;
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const mpz_class num = detail::parse_integer(text.substr(0, slash));
        const mpz_class den = detail::parse_integer(text.substr(slash + 1));
        if (den == 0) {
            throw DivisionByZero();
        }
        return Rational(mpq_class(num, den));
    }
    const detail::DecimalParts parts = detail::split_decimal(text);
    mpz_class num(parts.digits, 10);
    if (parts.negative) {
        num = -num;
    }
    if (parts.exponent >= 0) {
        return Rational(mpq_class(num * detail::pow10(static_cast<unsigned long>(parts.exponent))));
    }
    return Rational(mpq_class(num, detail::pow10(static_cast<unsigned long>(-parts.exponent))));
}

/// Numeric types every algorithm in the library is instantiated with.
template <class S>
concept Scalar = std::totally_ordered<S> && std::copyable<S> && requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    S(1);
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char *name = "f64";

    static double parse(std::string_view text) {
        if (text.find('/') != std::string_view::npos) {
            return Rational::parse(text).to_double();
        }
        detail::split_decimal(text);  // same grammar as the exact parser
        const char *first = text.data() + (!text.empty() && text[0] == '+' ? 1 : 0);
        double value = 0;
        const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw UsageError("invalid number '" + std::string(text) + "'");
        }
        return value;
    }

    static double from_ratio(std::int64_t num, std::int64_t den) {
        if (den == 0) {
            throw DivisionByZero();
        }
        return static_cast<double>(num) / static_cast<double>(den);
    }

    /// Shortest decimal that round-trips.
    static std::string to_string(double value) {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
        return std::string(buf, ptr);
    }

    static std::string to_decimal(double value) { return to_string(value); }
    static double floor(double value) { return std::floor(value); }
    static double to_double(double value) { return value; }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char *name = "rational";

    static Rational parse(std::string_view text) { return Rational::parse(text); }
    static Rational from_ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }
    static std::string to_string(const Rational &value) { return value.to_string(); }

    /// Finite decimal expansion when one exists, "p/q" otherwise.
    static std::string to_decimal(const Rational &value) {
        mpz_class den = value.denominator();
        unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
        unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
        if (den != 1) {
            return value.to_string();
        }
        const unsigned long places = std::max(twos, fives);
        if (places == 0) {
            return value.numerator().get_str();
        }
        mpz_class scaled = value.numerator() * detail::pow10(places) / value.denominator();
        const bool negative = scaled < 0;
        std::string digits = mpz_class(abs(scaled)).get_str();
        if (digits.size() <= places) {
            digits.insert(0, places + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - places, ".");
        return negative ? "-" + digits : digits;
    }

    static Rational floor(const Rational &value) { return value.floor(); }
    static double to_double(const Rational &value) { return value.to_double(); }
};

template <Scalar S>
S parse_scalar(std::string_view text) {
    return ScalarTraits<S>::parse(text);
}

template <Scalar S>
std::string to_string(const S &value) {
    return ScalarTraits<S>::to_string(value);
}

template <Scalar S>
S scalar_add(const S &a, const S &b) {
    return a + b;
}

/// Checked division in both modes.
template <Scalar S>
S scalar_div(const S &a, const S &b) {
    if (b == S(0)) {
        throw DivisionByZero();
    }
    return a / b;
}

static_assert(Scalar<double>);
static_assert(Scalar<Rational>);

}  // namespace makespan
