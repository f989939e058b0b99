#pragma once

#include <gmpxx.h>

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ksmooth {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

// p/q in lowest terms; mpq_class(p, q) alone is not canonicalised.
Rational fraction(long p, long q);

// Accepts "p/q", integers and plain decimals ("-0.125", "3e-2").
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(std::span<const Rational> v);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Vec negated(std::span<const Rational> v);
Vec scaled(std::span<const Rational> v, const Rational& s);
bool is_zero(std::span<const Rational> v);

// Lexicographic order on coordinate vectors.
bool lex_less(std::span<const Rational> a, std::span<const Rational> b);

// First nonzero coordinate is positive. Picks one representative of {v, -v}.
bool leading_positive(std::span<const Rational> v);

enum class Mode { exact, approx };

// A number that is either an exact rational or a binary float. Arithmetic
// between the two modes is refused rather than silently rounded.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(Rational q) : value_(std::move(q)) {}
    explicit Scalar(double d) : value_(d) {}

    Mode mode() const { return std::holds_alternative<Rational>(value_) ? Mode::exact : Mode::approx; }
    bool is_exact() const { return mode() == Mode::exact; }

    // Throws ModeMismatch on an approx value.
    const Rational& exact() const;
    double to_double() const;
    std::string str() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);

private:
    std::variant<Rational, double> value_;
};

// Square root of a nonnegative rational: exact when q is a rational square.
Scalar sqrt_scalar(const Rational& q);

}  // namespace ksmooth
