#pragma once

// Scalar regime shared by every module: exact GMP rationals and MPFR
// big-floats, plus a runtime-tagged Scalar used at parsing boundaries.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

namespace hypergroup {

namespace mp = boost::multiprecision;

using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a coefficient table violates the hypergroup recurrence invariants.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a value that is guaranteed by theory is not met; indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
inline constexpr bool is_bigfloat_v = std::is_same_v<T, BigFloat>;

/// The floating type a computation falls back to once a square root appears.
template <class T>
struct real_type {
  using type = BigFloat;
};
template <>
struct real_type<double> {
  using type = double;
};
template <class T>
using real_t = typename real_type<T>::type;

inline unsigned precision_bits(const BigFloat& x) {
  return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

/// Smallest decimal-digit setting whose MPFR mantissa holds at least `bits`.
/// Boost sizes mantissas from decimal digits, so the mapping is probed.
inline unsigned digits10_for_bits(unsigned bits) {
  const unsigned saved = BigFloat::default_precision();
  unsigned d = bits > 8 ? static_cast<unsigned>(std::floor((bits - 8) * 0.30102999566398120)) : 1;
  for (;; ++d) {
    BigFloat::default_precision(d);
    if (precision_bits(BigFloat(0)) >= bits) break;
  }
  BigFloat::default_precision(saved);
  return d;
}

inline unsigned current_precision_bits() {
  BigFloat probe(0);
  return precision_bits(probe);
}

/// Sets the working big-float precision for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) : saved_(BigFloat::default_precision()) {
    if (bits < 16) throw DomainError("precision must be at least 16 bits");
    BigFloat::default_precision(digits10_for_bits(bits));
  }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;
  ~PrecisionGuard() { BigFloat::default_precision(saved_); }

 private:
  unsigned saved_;
};

template <class T>
T from_rational(const Rational& r) {
  if constexpr (is_exact_v<T>) {
    return r;
  } else if constexpr (is_bigfloat_v<T>) {
    BigFloat out;
    mpfr_set_q(out.backend().data(), r.backend().data(), MPFR_RNDN);
    return out;
  } else {
    return r.template convert_to<T>();
  }
}

template <class T>
T from_int(long v) {
  return T(v);
}

template <class T>
real_t<T> to_real(const T& v) {
  if constexpr (is_exact_v<T>) {
    return from_rational<BigFloat>(v);
  } else {
    return v;
  }
}

template <class T>
T abs_of(const T& v) {
  return v < 0 ? T(-v) : v;
}

/// Integer power with exact results for rationals; negative exponents invert.
template <class T>
T pow_int(const T& base, long e) {
  if (e < 0) return T(1) / pow_int(base, -e);
  T result(1);
  T b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

template <class R>
R sqrt_real(const R& v) {
  static_assert(!is_exact_v<R>, "square roots require a floating scalar type");
  if (v < 0) throw DomainError("square root of a negative value");
  using std::sqrt;
  return sqrt(v);
}

/// Machine epsilon of the value's working precision.
template <class T>
T epsilon_of(const T& probe) {
  if constexpr (is_bigfloat_v<T>) {
    BigFloat one(1);
    return BigFloat(mp::ldexp(one, 1 - static_cast<int>(precision_bits(probe))));
  } else if constexpr (is_exact_v<T>) {
    return T(0);
  } else {
    return std::numeric_limits<T>::epsilon();
  }
}

inline std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

/// Shortest decimal that parses back to the same value at the value's precision.
inline std::string to_string(const BigFloat& x) {
  if (mp::isnan(x)) return "nan";
  if (mp::isinf(x)) return x < 0 ? "-inf" : "inf";
  if (x == 0) return "0";
  const mpfr_prec_t prec = mpfr_get_prec(x.backend().data());
  const int max_digits = static_cast<int>(std::ceil(prec * 0.30102999566398120)) + 2;
  mpfr_t back;
  mpfr_init2(back, prec);
  std::string best;
  for (int digits = 1; digits <= max_digits; ++digits) {
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), x.backend().data(), MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(0, 1);
    while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
    const long e = static_cast<long>(exp10) - 1;
    std::string text = neg ? "-" : "";
    if (e >= -6 && e < 21) {
      if (e < 0) {
        text += "0." + std::string(static_cast<size_t>(-e - 1), '0') + mant;
      } else if (static_cast<size_t>(e + 1) >= mant.size()) {
        text += mant + std::string(static_cast<size_t>(e + 1) - mant.size(), '0');
      } else {
        text += mant.substr(0, static_cast<size_t>(e + 1)) + "." + mant.substr(static_cast<size_t>(e + 1));
      }
    } else {
      text += mant.substr(0, 1);
      if (mant.size() > 1) text += "." + mant.substr(1);
      text += "e" + std::to_string(e);
    }
    mpfr_set_str(back, text.c_str(), 10, MPFR_RNDN);
    best = text;
    if (mpfr_equal_p(back, x.backend().data())) break;
  }
  mpfr_clear(back);
  return best;
}

inline std::string to_string(double x) {
  char buf[64];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace detail {
// GMP reads a leading 0 as an octal prefix.
inline std::string strip_zeros(std::string digits) {
  std::size_t sign = (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) ? 1 : 0;
  std::size_t first = digits.find_first_not_of('0', sign);
  if (first == std::string::npos) return "0";
  if (digits[0] == '+') sign = 0, digits.erase(0, 1), first -= 1;
  return digits.substr(0, sign) + digits.substr(first);
}
}  // namespace detail

/// Parses "p/q", an integer, or a decimal literal into an exact rational.
inline Rational parse_rational(const std::string& text) {
  static const std::regex frac(R"(^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$)");
  static const std::regex dec(R"(^\s*([+-]?)(\d*)\.(\d*)(?:[eE]([+-]?\d+))?\s*$|^\s*([+-]?)(\d+)[eE]([+-]?\d+)\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, frac)) {
    Integer num(detail::strip_zeros(m[1].str()));
    Integer den(m[2].matched ? detail::strip_zeros(m[2].str()) : std::string("1"));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (std::regex_match(text, m, dec)) {
    std::string sign, ip, fp, ex;
    if (m[2].matched || m[3].matched) {
      sign = m[1].str(), ip = m[2].str(), fp = m[3].str(), ex = m[4].str();
    } else {
      sign = m[5].str(), ip = m[6].str(), ex = m[7].str();
    }
    if (ip.empty() && fp.empty()) throw DomainError("malformed number '" + text + "'");
    Integer digits(detail::strip_zeros(ip + fp));
    long e10 = (ex.empty() ? 0 : std::stol(ex)) - static_cast<long>(fp.size());
    Rational r(digits);
    Rational ten(10);
    r *= pow_int(ten, e10);
    return sign == "-" ? Rational(-r) : r;
  }
  throw DomainError("malformed number '" + text + "'");
}

inline bool is_fraction_literal(const std::string& text) {
  static const std::regex frac(R"(^\s*[+-]?\d+\s*(/\s*\d+)?\s*$)");
  return std::regex_match(text, frac);
}

/// Runtime-tagged real: an exact rational or a big-float carrying its precision.
/// Mixed arithmetic promotes to big-float at the float operand's precision.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Scalar(BigFloat f) : value_(std::move(f)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : value_(Rational(v)) {}       // NOLINT(google-explicit-constructor)

  /// "p/q" and integers are exact; decimal literals become big-floats at `bits`.
  static Scalar parse(const std::string& text, unsigned bits = kDefaultPrecisionBits) {
    if (is_fraction_literal(text)) return Scalar(parse_rational(text));
    Rational exact = parse_rational(text);
    PrecisionGuard guard(bits);
    return Scalar(from_rational<BigFloat>(exact));
  }

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  const BigFloat& bigfloat() const { return std::get<BigFloat>(value_); }

  std::optional<unsigned> precision() const {
    if (is_exact()) return std::nullopt;
    return precision_bits(bigfloat());
  }

  /// Value as big-float; exact values are rounded at `bits`.
  BigFloat to_bigfloat(unsigned bits = kDefaultPrecisionBits) const {
    if (!is_exact()) return bigfloat();
    PrecisionGuard guard(bits);
    return from_rational<BigFloat>(rational());
  }

  template <class T>
  T as() const {
    if constexpr (is_exact_v<T>) {
      if (!is_exact()) throw DomainError("exact value requested from a big-float scalar");
      return rational();
    } else if constexpr (is_bigfloat_v<T>) {
      return is_exact() ? from_rational<BigFloat>(rational()) : bigfloat();
    } else {
      return is_exact() ? rational().template convert_to<T>() : bigfloat().template convert_to<T>();
    }
  }

  std::string str() const {
    return std::visit([](const auto& v) { return hypergroup::to_string(v); }, value_);
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) { return combine(x, y, [](auto a, auto b) { return a + b; }); }
  friend Scalar operator-(const Scalar& x, const Scalar& y) { return combine(x, y, [](auto a, auto b) { return a - b; }); }
  friend Scalar operator*(const Scalar& x, const Scalar& y) { return combine(x, y, [](auto a, auto b) { return a * b; }); }
  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    if (y.is_exact() ? y.rational() == 0 : y.bigfloat() == 0) throw DomainError("division by zero");
    return combine(x, y, [](auto a, auto b) { return a / b; });
  }
  Scalar operator-() const { return Scalar(0L) - *this; }

  friend bool operator==(const Scalar& x, const Scalar& y) { return compare(x, y) == 0; }
  friend bool operator<(const Scalar& x, const Scalar& y) { return compare(x, y) < 0; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return compare(x, y) <= 0; }
  friend bool operator>(const Scalar& x, const Scalar& y) { return compare(x, y) > 0; }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return compare(x, y) >= 0; }

 private:
  template <class Op>
  static Scalar combine(const Scalar& x, const Scalar& y, Op op) {
    if (x.is_exact() && y.is_exact()) return Scalar(Rational(op(x.rational(), y.rational())));
    unsigned bits = std::max(x.precision().value_or(0), y.precision().value_or(0));
    PrecisionGuard guard(bits);
    BigFloat a = x.is_exact() ? from_rational<BigFloat>(x.rational()) : BigFloat(x.bigfloat());
    BigFloat b = y.is_exact() ? from_rational<BigFloat>(y.rational()) : BigFloat(y.bigfloat());
    return Scalar(BigFloat(op(a, b)));
  }

  static int compare(const Scalar& x, const Scalar& y) {
    if (x.is_exact() && y.is_exact()) return x.rational().compare(y.rational());
    Scalar d = x - y;
    const BigFloat& f = d.bigfloat();
    return f < 0 ? -1 : (f > 0 ? 1 : 0);
  }

  std::variant<Rational, BigFloat> value_;
};

}  // namespace hypergroup
