#include "ksmooth/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "ksmooth/error.hpp"

namespace ksmooth {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_integer(std::string_view s, std::string_view whole) {
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    if (!all_digits(body)) throw Error(ErrorKind::ParseError, "not a rational: \"" + std::string(whole) + "\"");
    mpz_class z;
    std::string tmp(s.front() == '+' ? s.substr(1) : s);
    z.set_str(tmp, 10);
    return Rational(z);
}

Rational pow10(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    auto fail = [&] { throw Error(ErrorKind::ParseError, "not a rational: \"" + std::string(whole) + "\""); };
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp = s.substr(e + 1);
        s = s.substr(0, e);
        bool eneg = false;
        if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) {
            eneg = exp.front() == '-';
            exp.remove_prefix(1);
        }
        if (!all_digits(exp) || exp.size() > 6) fail();
        exponent = std::stol(std::string(exp)) * (eneg ? -1 : 1);
    }
    std::string digits;
    auto dot = s.find('.');
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (ip.empty() && fp.empty()) fail();
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) fail();
    digits.append(ip).append(fp);
    mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
    Rational q = Rational(mantissa) * pow10(exponent - static_cast<long>(fp.size()));
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

}  // namespace

Rational fraction(long p, long q) {
    if (q == 0) throw Error(ErrorKind::ValidationError, "zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_integer(s.substr(0, slash), text);
        std::string_view den_text = s.substr(slash + 1);
        if (den_text.empty() || !all_digits(den_text))
            throw Error(ErrorKind::ParseError, "bad denominator in \"" + std::string(text) + "\"");
        Rational den = parse_integer(den_text, text);
        if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in \"" + std::string(text) + "\"");
        Rational q = num / den;
        q.canonicalize();
        return q;
    }
    if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s, text);
    return parse_integer(s, text);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(std::span<const Rational> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "dot of lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec negated(std::span<const Rational> v) {
    Vec out(v.begin(), v.end());
    for (auto& x : out) x = -x;
    return out;
}

Vec scaled(std::span<const Rational> v, const Rational& s) {
    Vec out(v.begin(), v.end());
    for (auto& x : out) x *= s;
    return out;
}

bool is_zero(std::span<const Rational> v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool lex_less(std::span<const Rational> a, std::span<const Rational> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool leading_positive(std::span<const Rational> v) {
    for (const auto& x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

const Rational& Scalar::exact() const {
    if (auto* q = std::get_if<Rational>(&value_)) return *q;
    throw Error(ErrorKind::ModeMismatch, "approximate value has no exact representation");
}

double Scalar::to_double() const {
    if (auto* q = std::get_if<Rational>(&value_)) return q->get_d();
    return std::get<double>(value_);
}

std::string Scalar::str() const {
    if (auto* q = std::get_if<Rational>(&value_)) return to_string(*q);
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(value_);
    return os.str();
}

namespace {

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    if (a.mode() != b.mode()) throw Error(ErrorKind::ModeMismatch, "exact and approximate scalars mixed");
    if (a.is_exact()) return Scalar(Rational(op(a.exact(), b.exact())));
    return Scalar(op(a.to_double(), b.to_double()));
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_exact() && b.exact() == 0) throw Error(ErrorKind::ValidationError, "division by zero");
    return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
}
bool operator==(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) return false;
    if (a.is_exact()) return a.exact() == b.exact();
    return a.to_double() == b.to_double();
}

Scalar sqrt_scalar(const Rational& q) {
    if (q < 0) throw Error(ErrorKind::ValidationError, "square root of a negative rational");
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        return Scalar(Rational(rn, rd));
    }
    return Scalar(std::sqrt(q.get_d()));
}

}  // namespace ksmooth
