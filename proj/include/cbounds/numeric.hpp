#pragma once

// Numeric: either an exact rational or a certified enclosure.
//
// Exact values stay exact through +, -, *, /, integer powers and roots of
// perfect powers. Anything else (exp, log, trig, irrational roots) produces
// an Interval; value() is its midpoint and err_radius() a rounded-up bound
// on the distance to either endpoint, so err_radius() == 0 iff exact or the
// enclosure is a single point.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "cbounds/errors.hpp"
#include "cbounds/interval.hpp"

namespace cbounds {

class Numeric {
 public:
  Numeric() : rep_(mpq_class(0)) {}
  Numeric(int v) : rep_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Numeric(long v) : rep_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Numeric(const mpz_class& v) : rep_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Numeric(mpq_class v) : rep_(std::move(v)) {  // NOLINT(google-explicit-constructor)
    std::get<mpq_class>(rep_).canonicalize();
  }
  explicit Numeric(Interval v) : rep_(std::move(v)) {}

  static Numeric rational(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    return Numeric(mpq_class(num, den));
  }

  /// Parses "7", "-3/4", "0.125", "1e-6", "2.5E3". Decimal literals are exact.
  static Numeric parse(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw DomainError("empty numeric literal");
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpq_class num = parse_decimal(s.substr(0, slash));
      mpq_class den = parse_decimal(s.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in '" + s + "'");
      return Numeric(mpq_class(num / den));
    }
    return Numeric(parse_decimal(s));
  }

  bool is_exact() const { return std::holds_alternative<mpq_class>(rep_); }

  const mpq_class& exact() const {
    if (!is_exact()) throw std::logic_error("Numeric::exact() on an approximate value");
    return std::get<mpq_class>(rep_);
  }

  /// Precision of the enclosure; 0 for exact values.
  Precision precision() const { return is_exact() ? 0 : std::get<Interval>(rep_).precision(); }

  /// Enclosure at `prec` bits (approximate values keep their own precision
  /// when it is higher).
  Interval enclose(Precision prec) const {
    if (is_exact()) return Interval::from_rational(exact(), prec);
    return std::get<Interval>(rep_);
  }

  Real value() const {
    if (is_exact()) {
      Real r(256);
      mpfr_set_q(r.get(), exact().get_mpq_t(), MPFR_RNDN);
      return r;
    }
    return std::get<Interval>(rep_).midpoint();
  }

  Real err_radius() const {
    if (is_exact()) return Real(64);
    return std::get<Interval>(rep_).radius();
  }

  double to_double() const {
    if (is_exact()) return exact().get_d();
    return value().to_double();
  }

  double err_double() const {
    if (is_exact()) return 0.0;
    return mpfr_get_d(err_radius().get(), MPFR_RNDU);
  }

  /// Exact values as "p/q" (or "p"); approximate values as a decimal
  /// midpoint carrying the digits the enclosure's precision supports.
  std::string str() const {
    if (is_exact()) return exact().get_str();
    const Precision p = precision();
    const int digits = std::max(17, static_cast<int>(static_cast<double>(p) * 0.30102999566398));
    return value().to_string(digits);
  }

  /// Decimal rendering with `digits` significant digits regardless of mode.
  std::string decimal(int digits = 17) const { return value().to_string(digits); }

  std::string err_str() const {
    if (is_exact()) return "0";
    return err_radius().to_string(3);
  }

  /// +1/-1/0 when certain, nullopt when the enclosure straddles zero.
  std::optional<int> sign() const {
    if (is_exact()) return sgn(exact());
    const int s = std::get<Interval>(rep_).certain_sign();
    if (s == 2) return std::nullopt;
    return s;
  }

  bool is_exact_zero() const { return is_exact() && sgn(exact()) == 0; }

  Numeric operator-() const {
    if (is_exact()) return Numeric(mpq_class(-exact()));
    return Numeric(-std::get<Interval>(rep_));
  }

  friend Numeric operator+(const Numeric& x, const Numeric& y) {
    if (x.is_exact() && y.is_exact()) return Numeric(mpq_class(x.exact() + y.exact()));
    const Precision p = std::max(x.precision(), y.precision());
    return Numeric(x.enclose(p) + y.enclose(p));
  }
  friend Numeric operator-(const Numeric& x, const Numeric& y) {
    if (x.is_exact() && y.is_exact()) return Numeric(mpq_class(x.exact() - y.exact()));
    const Precision p = std::max(x.precision(), y.precision());
    return Numeric(x.enclose(p) - y.enclose(p));
  }
  friend Numeric operator*(const Numeric& x, const Numeric& y) {
    if (x.is_exact() && y.is_exact()) return Numeric(mpq_class(x.exact() * y.exact()));
    // An exact zero annihilates any enclosure.
    if (x.is_exact_zero() || y.is_exact_zero()) return Numeric(0);
    const Precision p = std::max(x.precision(), y.precision());
    return Numeric(x.enclose(p) * y.enclose(p));
  }
  friend Numeric operator/(const Numeric& x, const Numeric& y) {
    if (y.is_exact_zero()) throw DomainError("division by zero");
    if (x.is_exact() && y.is_exact()) return Numeric(mpq_class(x.exact() / y.exact()));
    if (x.is_exact_zero()) return Numeric(0);
    const Precision p = std::max(x.precision(), y.precision());
    return Numeric(x.enclose(p) / y.enclose(p));
  }
  Numeric& operator+=(const Numeric& o) { return *this = *this + o; }
  Numeric& operator-=(const Numeric& o) { return *this = *this - o; }
  Numeric& operator*=(const Numeric& o) { return *this = *this * o; }
  Numeric& operator/=(const Numeric& o) { return *this = *this / o; }

  const Interval& interval() const { return std::get<Interval>(rep_); }

 private:
  static mpq_class parse_decimal(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    bool any_digit = false;
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        any_digit = true;
        if (seen_dot) ++frac_digits;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
    }
    if (!any_digit) throw DomainError("malformed numeric literal '" + s + "'");
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      const std::string e = s.substr(i);
      if (e.empty()) throw DomainError("malformed exponent in '" + s + "'");
      size_t used = 0;
      try {
        exp10 = std::stol(e, &used);
      } catch (const std::exception&) {
        throw DomainError("malformed exponent in '" + s + "'");
      }
      if (used != e.size()) throw DomainError("malformed numeric literal '" + s + "'");
      i = s.size();
    }
    if (i != s.size()) throw DomainError("malformed numeric literal '" + s + "'");
    mpz_class mant(digits, 10);
    if (neg) mant = -mant;
    const long shift = exp10 - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class q = shift >= 0 ? mpq_class(mant * scale) : mpq_class(mant, scale);
    q.canonicalize();
    return q;
  }

  std::variant<mpq_class, Interval> rep_;
};

inline std::optional<int> compare(const Numeric& x, const Numeric& y) { return (x - y).sign(); }

/// True only when both are exact and equal.
inline bool exact_equal(const Numeric& x, const Numeric& y) {
  return x.is_exact() && y.is_exact() && x.exact() == y.exact();
}

inline Numeric abs(const Numeric& x) {
  if (x.is_exact()) {
    mpq_class r;
    mpq_abs(r.get_mpq_t(), x.exact().get_mpq_t());
    return Numeric(r);
  }
  return Numeric(x.interval().abs());
}

inline Numeric min(const Numeric& x, const Numeric& y) {
  if (x.is_exact() && y.is_exact()) return x.exact() <= y.exact() ? x : y;
  const Precision p = std::max(x.precision(), y.precision());
  return Numeric(Interval::min(x.enclose(p), y.enclose(p)));
}

inline Numeric max(const Numeric& x, const Numeric& y) {
  if (x.is_exact() && y.is_exact()) return x.exact() >= y.exact() ? x : y;
  const Precision p = std::max(x.precision(), y.precision());
  return Numeric(Interval::max(x.enclose(p), y.enclose(p)));
}

inline Numeric pi(Precision prec) { return Numeric(Interval::pi(prec)); }
inline Numeric euler(Precision prec) { return Numeric(Interval::e(prec)); }

namespace detail {
inline Precision work_precision(const Numeric& x, Precision prec) { return std::max(prec, x.precision()); }

inline std::optional<mpz_class> exact_root(const mpz_class& v, unsigned long k) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), k) != 0) return r;
  return std::nullopt;
}
}  // namespace detail

/// Integer power, exact for exact input.
inline Numeric pow(const Numeric& x, long k) {
  if (x.is_exact()) {
    if (k < 0 && sgn(x.exact()) == 0) throw DomainError("zero raised to a negative power");
    const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), x.exact().get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), x.exact().get_den_mpz_t(), e);
    return k < 0 ? Numeric(mpq_class(den, num)) : Numeric(mpq_class(num, den));
  }
  return Numeric(x.interval().pow(k));
}

/// k-th root of a nonnegative value; exact when x is an exact perfect power.
inline Numeric root(const Numeric& x, unsigned long k, Precision prec) {
  if (k == 0) throw DomainError("zeroth root");
  if (k == 1) return x;
  if (x.is_exact()) {
    if (sgn(x.exact()) < 0) throw DomainError("root of a negative value");
    auto n = detail::exact_root(x.exact().get_num(), k);
    auto d = detail::exact_root(x.exact().get_den(), k);
    if (n && d) return Numeric(mpq_class(*n, *d));
  }
  return Numeric(x.enclose(detail::work_precision(x, prec)).root(k));
}

inline Numeric sqrt(const Numeric& x, Precision prec) { return root(x, 2, prec); }

/// Real power x^r. Exact when r is an integer, or r = p/q and x^p is an exact
/// perfect q-th power. Non-integer r requires x >= 0 (x > 0 when r <= 0).
inline Numeric pow(const Numeric& x, const Numeric& r, Precision prec) {
  if (r.is_exact()) {
    const mpq_class& q = r.exact();
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return pow(x, q.get_num().get_si());
    if (x.is_exact()) {
      const int s = sgn(x.exact());
      if (s < 0) throw DomainError("non-integer power of a negative value");
      if (s == 0) {
        if (sgn(q) > 0) return Numeric(0);
        throw DomainError("zero raised to a nonpositive power");
      }
    }
    // Exact route only while x^p stays of moderate size.
    if (x.is_exact() && q.get_num().fits_slong_p() && q.get_den().fits_ulong_p()) {
      const long p = q.get_num().get_si();
      const size_t bits = mpz_sizeinbase(x.exact().get_num_mpz_t(), 2) + mpz_sizeinbase(x.exact().get_den_mpz_t(), 2);
      if (static_cast<double>(bits) * std::abs(static_cast<double>(p)) <= 65536.0) {
        return root(pow(x, p), q.get_den().get_ui(), prec);
      }
    }
  }
  const Precision p = std::max(detail::work_precision(x, prec), r.precision());
  if (x.is_exact_zero()) {
    if (r.sign() == std::optional<int>(1)) return Numeric(0);
    throw DomainError("zero raised to a power not certainly positive");
  }
  return Numeric(x.enclose(p).pow(r.enclose(p)));
}

inline Numeric exp(const Numeric& x, Precision prec) {
  if (x.is_exact_zero()) return Numeric(1);
  return Numeric(x.enclose(detail::work_precision(x, prec)).exp());
}

inline Numeric log(const Numeric& x, Precision prec) {
  if (x.is_exact()) {
    if (sgn(x.exact()) <= 0) throw DomainError("logarithm of a nonpositive value");
    if (x.exact() == 1) return Numeric(0);
  }
  return Numeric(x.enclose(detail::work_precision(x, prec)).log());
}

inline Numeric sin(const Numeric& x, Precision prec) {
  if (x.is_exact_zero()) return Numeric(0);
  return Numeric(x.enclose(detail::work_precision(x, prec)).sin());
}

inline Numeric cos(const Numeric& x, Precision prec) {
  if (x.is_exact_zero()) return Numeric(1);
  return Numeric(x.enclose(detail::work_precision(x, prec)).cos());
}

inline Numeric tan(const Numeric& x, Precision prec) {
  if (x.is_exact_zero()) return Numeric(0);
  return Numeric(x.enclose(detail::work_precision(x, prec)).tan());
}

inline Numeric cot(const Numeric& x, Precision prec) {
  if (x.is_exact_zero()) throw DomainError("cotangent of zero");
  return Numeric(x.enclose(detail::work_precision(x, prec)).cot());
}

/// n! as an exact big integer.
inline mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace cbounds
