#pragma once

// Real functions tagged with the convexity class the inequalities rely on,
// a deterministic second-difference spot check for those tags, and the
// closed registry of named functions exposed by the CLI.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cbounds/numeric.hpp"

namespace cbounds {

enum class Convexity { Affine, Convex, StrictlyConvex, Concave, StrictlyConcave };
enum class Monotone { None, Increasing, Decreasing };

inline const char* to_string(Convexity c) {
  switch (c) {
    case Convexity::Affine:
      return "affine";
    case Convexity::Convex:
      return "convex";
    case Convexity::StrictlyConvex:
      return "strictly-convex";
    case Convexity::Concave:
      return "concave";
    case Convexity::StrictlyConcave:
      return "strictly-concave";
  }
  return "?";
}

/// Interval of definition; a missing bound is unbounded.
struct Domain {
  std::optional<Numeric> lo;
  std::optional<Numeric> hi;
  bool lo_open = false;
  bool hi_open = false;

  /// False only when t is certainly outside.
  bool may_contain(const Numeric& t) const {
    if (lo) {
      const auto c = compare(t, *lo);
      if (c && (*c < 0 || (*c == 0 && lo_open))) return false;
    }
    if (hi) {
      const auto c = compare(t, *hi);
      if (c && (*c > 0 || (*c == 0 && hi_open))) return false;
    }
    return true;
  }
};

using Evaluator = std::function<Numeric(const Numeric&, Precision)>;

struct FnSpec {
  std::string name;
  Evaluator eval;
  /// Optional ln f, used when it is more exact than log(eval(t)).
  Evaluator log_eval;
  Convexity convexity = Convexity::Convex;
  bool log_convex = false;
  Monotone monotone = Monotone::None;
  Domain domain;

  Numeric operator()(const Numeric& t, Precision prec) const { return eval(t, prec); }

  /// ln f(t); throws DomainError unless f(t) is certainly positive.
  Numeric log_at(const Numeric& t, Precision prec) const {
    if (log_eval) return log_eval(t, prec);
    const Numeric v = eval(t, prec);
    if (v.sign() != std::optional<int>(1)) throw DomainError(name + ": nonpositive sample in a logarithmic bound");
    return log(v, prec);
  }

  bool convex_or_affine() const {
    return convexity == Convexity::Affine || convexity == Convexity::Convex ||
           convexity == Convexity::StrictlyConvex;
  }
  bool concave() const { return convexity == Convexity::Concave || convexity == Convexity::StrictlyConcave; }
  bool strict() const {
    return convexity == Convexity::StrictlyConvex || convexity == Convexity::StrictlyConcave;
  }

  /// Throws unless [a, b] may lie inside the domain.
  void require_on(const Numeric& a, const Numeric& b) const {
    if (!domain.may_contain(a) || !domain.may_contain(b)) {
      throw DomainError(name + ": [" + a.str() + ", " + b.str() + "] is outside the function's domain");
    }
  }
};

/// -f with every tag reversed. Log flags are dropped (-f is not positive).
inline FnSpec negated(const FnSpec& f) {
  FnSpec g = f;
  g.name = "-" + f.name;
  Evaluator inner = f.eval;
  g.eval = [inner](const Numeric& t, Precision p) { return -inner(t, p); };
  g.log_eval = nullptr;
  g.log_convex = false;
  switch (f.convexity) {
    case Convexity::Affine:
      g.convexity = Convexity::Affine;
      break;
    case Convexity::Convex:
      g.convexity = Convexity::Concave;
      break;
    case Convexity::StrictlyConvex:
      g.convexity = Convexity::StrictlyConcave;
      break;
    case Convexity::Concave:
      g.convexity = Convexity::Convex;
      break;
    case Convexity::StrictlyConcave:
      g.convexity = Convexity::StrictlyConvex;
      break;
  }
  if (f.monotone == Monotone::Increasing) g.monotone = Monotone::Decreasing;
  if (f.monotone == Monotone::Decreasing) g.monotone = Monotone::Increasing;
  return g;
}

// ---------------------------------------------------------------------------
// Convexity spot check

struct ConvexityDiagnostic {
  int samples = 0;
  int mismatches = 0;
  int undecided = 0;
  std::vector<std::string> messages;

  bool ok() const { return mismatches == 0; }
};

namespace detail {
/// Radical inverse of k in the given base, as an exact rational in [0, 1).
inline mpq_class radical_inverse(unsigned long k, unsigned long base) {
  mpz_class num = 0;
  mpz_class den = 1;
  while (k > 0) {
    num = num * base + (k % base);
    den *= base;
    k /= base;
  }
  // num = d0 b^(m-1) + d1 b^(m-2) + ..., den = b^m
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}
}  // namespace detail

/// Samples `samples` triples t1 < t2 < t3 in (a, b) from a Halton sequence
/// (bases 2, 3, 5) and checks the sign of the second divided difference
/// against the declared convexity. Mismatches are reported, not thrown.
inline ConvexityDiagnostic spot_check_convexity(const FnSpec& f, const Numeric& a, const Numeric& b, int samples,
                                                unsigned long seed, Precision prec) {
  ConvexityDiagnostic diag;
  const Numeric width = b - a;
  for (unsigned long k = seed + 1; diag.samples < samples && k < seed + 1 + 4ul * static_cast<unsigned long>(samples);
       ++k) {
    std::array<mpq_class, 3> u = {detail::radical_inverse(k, 2), detail::radical_inverse(k, 3),
                                  detail::radical_inverse(k, 5)};
    std::sort(u.begin(), u.end());
    if (u[0] == u[1] || u[1] == u[2] || sgn(u[0]) == 0) continue;
    const Numeric t1 = a + width * Numeric(u[0]);
    const Numeric t2 = a + width * Numeric(u[1]);
    const Numeric t3 = a + width * Numeric(u[2]);
    const Numeric f1 = f(t1, prec), f2 = f(t2, prec), f3 = f(t3, prec);
    const Numeric second = (f3 - f2) / (t3 - t2) - (f2 - f1) / (t2 - t1);
    ++diag.samples;
    const auto s = second.sign();
    if (!s) {
      ++diag.undecided;
      continue;
    }
    bool bad = false;
    switch (f.convexity) {
      case Convexity::Affine:
        bad = *s != 0;
        break;
      case Convexity::Convex:
      case Convexity::StrictlyConvex:
        bad = *s < 0;
        break;
      case Convexity::Concave:
      case Convexity::StrictlyConcave:
        bad = *s > 0;
        break;
    }
    if (bad) {
      ++diag.mismatches;
      if (diag.messages.size() < 3) {
        diag.messages.push_back(f.name + " declared " + to_string(f.convexity) + " but the second difference at (" +
                                t1.decimal(8) + ", " + t2.decimal(8) + ", " + t3.decimal(8) + ") has sign " +
                                std::to_string(*s));
      }
    }
  }
  return diag;
}

// ---------------------------------------------------------------------------
// Registry

namespace detail {
inline Domain positive_reals() { return Domain{Numeric(0), std::nullopt, true, false}; }
inline Domain nonnegative_reals() { return Domain{Numeric(0), std::nullopt, false, false}; }

inline FnSpec power_function(const Numeric& r) {
  if (!r.is_exact()) throw DomainError("power:r needs an exact exponent");
  const mpq_class& q = r.exact();
  FnSpec f;
  f.name = "power:" + q.get_str();
  f.eval = [r](const Numeric& t, Precision p) { return pow(t, r, p); };
  if (sgn(q) < 0 || q > 1) {
    f.convexity = Convexity::StrictlyConvex;
  } else if (sgn(q) == 0 || q == 1) {
    f.convexity = Convexity::Affine;
  } else {
    f.convexity = Convexity::StrictlyConcave;
  }
  f.monotone = sgn(q) > 0 ? Monotone::Increasing : (sgn(q) < 0 ? Monotone::Decreasing : Monotone::None);
  f.domain = sgn(q) <= 0 ? positive_reals() : nonnegative_reals();
  if (sgn(q) < 0) {
    f.log_convex = true;
    f.log_eval = [r](const Numeric& t, Precision p) { return r * log(t, p); };
  }
  return f;
}
}  // namespace detail

inline std::vector<std::string> registered_functions() {
  return {"square", "exp", "reciprocal", "neg-log", "abs-shift", "affine", "power:r", "sin"};
}

/// Named FnSpecs: square t^2, exp e^t, reciprocal 1/t, neg-log -ln t,
/// abs-shift |t - 1/2|, affine t, power:r t^r (r exact), sin on [0, pi].
inline FnSpec lookup_function(std::string_view name) {
  FnSpec f;
  f.name = std::string(name);
  if (name == "square") {
    f.eval = [](const Numeric& t, Precision) { return t * t; };
    f.convexity = Convexity::StrictlyConvex;
  } else if (name == "exp") {
    f.eval = [](const Numeric& t, Precision p) { return exp(t, p); };
    f.log_eval = [](const Numeric& t, Precision) { return t; };
    f.convexity = Convexity::StrictlyConvex;
    f.log_convex = true;
    f.monotone = Monotone::Increasing;
  } else if (name == "reciprocal") {
    f.eval = [](const Numeric& t, Precision) { return Numeric(1) / t; };
    f.log_eval = [](const Numeric& t, Precision p) { return -log(t, p); };
    f.convexity = Convexity::StrictlyConvex;
    f.log_convex = true;
    f.monotone = Monotone::Decreasing;
    f.domain = detail::positive_reals();
  } else if (name == "neg-log") {
    f.eval = [](const Numeric& t, Precision p) { return -log(t, p); };
    f.convexity = Convexity::StrictlyConvex;
    f.monotone = Monotone::Decreasing;
    f.domain = detail::positive_reals();
  } else if (name == "abs-shift") {
    f.eval = [](const Numeric& t, Precision) { return abs(t - Numeric::rational(1, 2)); };
    f.convexity = Convexity::Convex;
  } else if (name == "affine") {
    f.eval = [](const Numeric& t, Precision) { return t; };
    f.convexity = Convexity::Affine;
    f.monotone = Monotone::Increasing;
  } else if (name.substr(0, 6) == "power:") {
    return detail::power_function(Numeric::parse(name.substr(6)));
  } else if (name == "sin") {
    f.eval = [](const Numeric& t, Precision p) { return sin(t, p); };
    f.convexity = Convexity::StrictlyConcave;
    f.domain = Domain{Numeric(0), pi(256), false, false};
  } else {
    throw UnknownName("unknown function '" + std::string(name) + "'");
  }
  return f;
}

}  // namespace cbounds
