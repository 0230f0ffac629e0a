#pragma once

// Outward-rounded interval arithmetic on top of MPFR.
//
// Every operation returns an enclosure of the exact real result: lower
// endpoints are rounded toward -inf, upper endpoints toward +inf. MPFR's
// elementary functions are correctly rounded, so a monotone function
// evaluated at the endpoints with directed rounding gives a valid
// enclosure.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "cbounds/errors.hpp"

namespace cbounds {

/// Working precision in significant bits.
using Precision = long;

inline constexpr Precision kDefaultPrecision = 128;

/// RAII handle for an mpfr_t.
class Real {
 public:
  explicit Real(Precision prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Precision precision() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
      sign = "-";
      mant.erase(0, 1);
    }
    while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
    const long e = static_cast<long>(exp10) - 1;
    // Plain notation for moderate exponents keeps output readable.
    if (e >= -5 && e < digits) {
      std::string out;
      if (e < 0) {
        out = "0." + std::string(static_cast<size_t>(-e - 1), '0') + mant;
      } else if (static_cast<size_t>(e + 1) >= mant.size()) {
        out = mant + std::string(static_cast<size_t>(e + 1) - mant.size(), '0');
      } else {
        out = mant.substr(0, static_cast<size_t>(e + 1)) + "." + mant.substr(static_cast<size_t>(e + 1));
      }
      return sign + out;
    }
    std::string out = mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    return sign + out + "e" + std::to_string(e);
  }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] with MPFR endpoints of a common precision.
class Interval {
 public:
  explicit Interval(Precision prec = kDefaultPrecision) : lo_(prec), hi_(prec) {}

  static Interval from_rational(const mpq_class& q, Precision prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Interval from_long(long v, Precision prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
  }

  static Interval pi(Precision prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  static Interval e(Precision prec) { return from_long(1, prec).exp(); }

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  Precision precision() const { return lo_.precision(); }

  bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
  bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

  /// +1 / -1 when the sign is certain, 0 for the point zero, 2 when undecided.
  int certain_sign() const {
    if (mpfr_sgn(lo_.get()) > 0) return 1;
    if (mpfr_sgn(hi_.get()) < 0) return -1;
    if (mpfr_zero_p(lo_.get()) && mpfr_zero_p(hi_.get())) return 0;
    return 2;
  }

  Real midpoint() const {
    Real m(precision() + 8);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
  }

  /// Upper bound on max(mid - lo, hi - mid).
  Real radius() const {
    Real m = midpoint();
    Real a(precision() + 8), b(precision() + 8);
    mpfr_sub(a.get(), m.get(), lo_.get(), MPFR_RNDU);
    mpfr_sub(b.get(), hi_.get(), m.get(), MPFR_RNDU);
    if (mpfr_cmp(a.get(), b.get()) < 0) return b;
    return a;
  }

  Interval operator-() const {
    Interval r(precision());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator+(const Interval& x, const Interval& y) {
    Interval r(std::max(x.precision(), y.precision()));
    mpfr_add(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& x, const Interval& y) {
    Interval r(std::max(x.precision(), y.precision()));
    mpfr_sub(r.lo_.get(), x.lo_.get(), y.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), x.hi_.get(), y.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& x, const Interval& y) {
    const Precision p = std::max(x.precision(), y.precision());
    Interval r(p);
    Real t(p);
    const mpfr_srcptr xs[2] = {x.lo_.get(), x.hi_.get()};
    const mpfr_srcptr ys[2] = {y.lo_.get(), y.hi_.get()};
    bool first = true;
    for (auto xv : xs) {
      for (auto yv : ys) {
        mpfr_mul(t.get(), xv, yv, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), xv, yv, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }

  friend Interval operator/(const Interval& x, const Interval& y) {
    if (y.contains_zero()) throw DomainError("interval division by an enclosure containing zero");
    const Precision p = std::max(x.precision(), y.precision());
    Interval r(p);
    Real t(p);
    const mpfr_srcptr xs[2] = {x.lo_.get(), x.hi_.get()};
    const mpfr_srcptr ys[2] = {y.lo_.get(), y.hi_.get()};
    bool first = true;
    for (auto xv : xs) {
      for (auto yv : ys) {
        mpfr_div(t.get(), xv, yv, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), xv, yv, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }

  Interval abs() const {
    if (mpfr_sgn(lo_.get()) >= 0) return *this;
    if (mpfr_sgn(hi_.get()) <= 0) return -*this;
    Interval r(precision());
    mpfr_set_zero(r.lo_.get(), 1);
    if (mpfr_cmpabs(lo_.get(), hi_.get()) > 0) {
      mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    } else {
      mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    }
    return r;
  }

  static Interval min(const Interval& x, const Interval& y) {
    Interval r(std::max(x.precision(), y.precision()));
    mpfr_min(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
    return r;
  }

  static Interval max(const Interval& x, const Interval& y) {
    Interval r(std::max(x.precision(), y.precision()));
    mpfr_max(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
    return r;
  }

  Interval exp() const {
    Interval r(precision());
    mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  Interval log() const {
    if (mpfr_sgn(lo_.get()) <= 0) throw DomainError("logarithm of a value not certainly positive");
    Interval r(precision());
    mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  /// k-th root, k >= 1, of a nonnegative enclosure.
  Interval root(unsigned long k) const {
    if (mpfr_sgn(lo_.get()) < 0) throw DomainError("root of a value not certainly nonnegative");
    Interval r(precision());
    mpfr_rootn_ui(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
    return r;
  }

  /// Integer power.
  Interval pow(long k) const {
    if (k == 0) return from_long(1, precision());
    if (k < 0) return from_long(1, precision()) / pow(-k);
    if (mpfr_sgn(lo_.get()) >= 0) {
      Interval r(precision());
      mpfr_pow_si(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
      mpfr_pow_si(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
      return r;
    }
    if (mpfr_sgn(hi_.get()) <= 0) {
      Interval m = (-*this).pow(k);
      return (k % 2 == 0) ? m : -m;
    }
    // Straddles zero.
    Interval a = abs().pow(k);
    if (k % 2 == 0) return a;
    Interval r(precision());
    mpfr_pow_si(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_pow_si(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
    return r;
  }

  /// x^y for x >= 0 (x > 0 when y may be nonpositive). x^y is monotone in each
  /// argument separately on that domain, so the extremes sit at the corners.
  Interval pow(const Interval& y) const {
    if (mpfr_sgn(lo_.get()) < 0) throw DomainError("real power of a value not certainly nonnegative");
    if (mpfr_sgn(y.lo_.get()) <= 0 && mpfr_sgn(lo_.get()) == 0) {
      throw DomainError("nonpositive power of a value that may be zero");
    }
    const Precision p = std::max(precision(), y.precision());
    Interval r(p);
    Real t(p);
    const mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
    const mpfr_srcptr ys[2] = {y.lo_.get(), y.hi_.get()};
    bool first = true;
    for (auto xv : xs) {
      for (auto yv : ys) {
        mpfr_pow(t.get(), xv, yv, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_pow(t.get(), xv, yv, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }

  Interval sin() const { return periodic(false); }
  Interval cos() const { return periodic(true); }
  Interval tan() const { return sin() / cos(); }
  Interval cot() const { return cos() / sin(); }

 private:
  // sin has extrema at pi/2 + k*pi (max for even k), cos at k*pi (max for
  // even k). Extrema inside the enclosure widen the bound to +-1.
  Interval periodic(bool cosine) const {
    const Precision p = precision();
    Interval r(p);
    Real t(p);
    auto f = [cosine](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) {
      if (cosine) {
        mpfr_cos(out, in, rnd);
      } else {
        mpfr_sin(out, in, rnd);
      }
    };
    f(r.lo_.get(), lo_.get(), MPFR_RNDD);
    f(t.get(), hi_.get(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
    f(r.hi_.get(), lo_.get(), MPFR_RNDU);
    f(t.get(), hi_.get(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);

    Interval shifted = *this;
    if (!cosine) {
      Interval half_pi = pi(p + 16) / from_long(2, p + 16);
      shifted = *this - half_pi;
    }
    Interval turns = shifted / pi(p + 16);
    Real k_lo(p), k_hi(p);
    mpfr_ceil(k_lo.get(), turns.lo_.get());
    mpfr_floor(k_hi.get(), turns.hi_.get());
    if (mpfr_cmp(k_lo.get(), k_hi.get()) <= 0) {
      Real span(p);
      mpfr_sub(span.get(), k_hi.get(), k_lo.get(), MPFR_RNDU);
      if (mpfr_cmp_ui(span.get(), 1) >= 0) {
        mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
      } else {
        // Exactly one candidate extremum k.
        mpz_class k;
        mpfr_get_z(k.get_mpz_t(), k_lo.get(), MPFR_RNDN);
        if (mpz_even_p(k.get_mpz_t())) {
          mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
        } else {
          mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
        }
      }
    }
    if (mpfr_cmp_si(r.lo_.get(), -1) < 0) mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_.get(), 1) > 0) mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
    return r;
  }

  Real lo_;
  Real hi_;
};

}  // namespace cbounds
