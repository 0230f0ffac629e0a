#pragma once

// Command-line front end. `run` parses arguments, executes one subcommand,
// buffers its records and writes them as JSONL (default), CSV or text.
//
// Exit codes: 0 every verdict holds, 1 some verdict is Violated, 4 some
// verdict stays Inconclusive at the final precision, 2 usage error or
// unknown name, 3 domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cbounds/convex.hpp"
#include "cbounds/means.hpp"
#include "cbounds/normed.hpp"
#include "cbounds/power_inequalities.hpp"
#include "cbounds/trig.hpp"

namespace cbounds::cli {

using Json = nlohmann::ordered_json;

enum class Format { Jsonl, Csv, Pretty };

struct RunConfig {
  Precision precision_bits = kDefaultPrecision;
  int max_retries = 4;
  Format format = Format::Jsonl;
  unsigned long seed = 0;
  unsigned jobs = 1;

  Context context() const {
    Context ctx;
    ctx.precision_bits = precision_bits;
    ctx.max_retries = max_retries;
    ctx.seed = seed;
    return ctx;
  }
};

/// Malformed argument text (exit code 2).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const Numeric& x) {
  Json j;
  j["value"] = x.str();
  j["float"] = x.to_double();
  j["err"] = x.err_double();
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["label"] = v.label;
  j["status"] = to_string(v.status);
  j["margin"] = to_json(v.margin);
  if (v.smaller) j["lhs"] = to_json(*v.smaller);
  if (v.larger) j["rhs"] = to_json(*v.larger);
  return j;
}

inline Json to_json(const Bracket& b) {
  Json j;
  j["lower"] = to_json(b.lower);
  j["upper"] = to_json(b.upper);
  j["lower_source"] = b.lower_source;
  j["upper_source"] = b.upper_source;
  return j;
}

inline Json to_json(const std::vector<Verdict>& vs) {
  Json j = Json::array();
  for (const auto& v : vs) j.push_back(to_json(v));
  return j;
}

namespace detail {
inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}
}  // namespace detail

/// Collects records and the worst verdict status; output is written once,
/// in insertion order.
class Emitter {
 public:
  void record(Json rec) { records_.push_back(std::move(rec)); }

  void note(const Verdict& v) { note(v.status); }
  void note(const std::optional<Verdict>& v) {
    if (v) note(*v);
  }
  void note(const std::vector<Verdict>& vs) {
    for (const auto& v : vs) note(v);
  }
  void note(Status s) {
    worst_ = combine(worst_, s);
    ++counts_[to_string(s)];
  }

  void summary(Json s) { summary_ = std::move(s); }

  Json status_counts() const {
    Json j;
    for (Status s : {Status::HoldsStrictly, Status::HoldsWithEquality, Status::Violated, Status::Inconclusive}) {
      const auto it = counts_.find(to_string(s));
      j[to_string(s)] = it == counts_.end() ? 0 : it->second;
    }
    return j;
  }

  int exit_code() const {
    if (worst_ == Status::Violated) return 1;
    if (worst_ == Status::Inconclusive) return 4;
    return 0;
  }

  void write(std::ostream& out, Format format) const {
    switch (format) {
      case Format::Jsonl:
        for (const auto& r : records_) out << r.dump() << '\n';
        if (summary_) out << Json{{"summary", *summary_}}.dump() << '\n';
        break;
      case Format::Csv:
        write_csv(out);
        break;
      case Format::Pretty:
        write_pretty(out);
        break;
    }
  }

 private:
  void write_csv(std::ostream& out) const {
    std::vector<std::vector<std::pair<std::string, std::string>>> flat;
    std::vector<std::string> header;
    std::map<std::string, bool> seen;
    for (const auto& r : records_) {
      flat.emplace_back();
      detail::flatten(r, "", flat.back());
      for (const auto& [k, v] : flat.back()) {
        if (!seen[k]) {
          seen[k] = true;
          header.push_back(k);
        }
      }
    }
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << detail::csv_field(header[i]);
    if (!header.empty()) out << '\n';
    for (const auto& row : flat) {
      std::map<std::string, std::string> cells(row.begin(), row.end());
      for (std::size_t i = 0; i < header.size(); ++i) {
        const auto it = cells.find(header[i]);
        out << (i ? "," : "") << (it == cells.end() ? "" : detail::csv_field(it->second));
      }
      out << '\n';
    }
    if (summary_) {
      std::vector<std::pair<std::string, std::string>> s;
      detail::flatten(*summary_, "", s);
      for (const auto& [k, v] : s) out << "# " << k << " = " << v << '\n';
    }
  }

  void write_pretty(std::ostream& out) const {
    bool first = true;
    for (const auto& r : records_) {
      if (!first) out << '\n';
      first = false;
      std::vector<std::pair<std::string, std::string>> lines;
      detail::flatten(r, "", lines);
      for (const auto& [k, v] : lines) out << k << ": " << v << '\n';
    }
    if (summary_) {
      out << (first ? "" : "\n") << "summary\n";
      std::vector<std::pair<std::string, std::string>> lines;
      detail::flatten(*summary_, "", lines);
      for (const auto& [k, v] : lines) out << "  " << k << ": " << v << '\n';
    }
  }

  std::vector<Json> records_;
  std::optional<Json> summary_;
  Status worst_ = Status::HoldsStrictly;
  std::map<std::string, long> counts_;
};

// ---------------------------------------------------------------------------
// Argument parsing

inline Numeric parse_number(const std::string& text, const std::string& flag) {
  try {
    return Numeric::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

inline std::vector<Numeric> parse_list(const std::string& text, const std::string& flag) {
  std::vector<Numeric> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p, flag));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

/// "lo..hi" or a single value.
inline std::pair<Numeric, Numeric> parse_range(const std::string& text, const std::string& flag) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const Numeric v = parse_number(text, flag);
    return {v, v};
  }
  return {parse_number(text.substr(0, dots), flag), parse_number(text.substr(dots + 2), flag)};
}

inline long as_integer(const Numeric& v, const std::string& flag) {
  if (!v.is_exact() || v.exact().get_den() != 1 || !v.exact().get_num().fits_slong_p()) {
    throw UsageError(flag + ": expected an integer, got " + v.str());
  }
  return v.exact().get_num().get_si();
}

inline std::pair<long, long> parse_int_range(const std::string& text, const std::string& flag) {
  const auto [lo, hi] = parse_range(text, flag);
  const long a = as_integer(lo, flag);
  const long b = as_integer(hi, flag);
  if (b < a) throw UsageError(flag + ": empty range " + text);
  return {a, b};
}

inline Angle parse_angle(const std::string& text, const std::string& flag) {
  try {
    return Angle::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Subcommands

namespace detail {

inline Json diagnostics_json(const std::vector<std::string>& d) { return Json(d); }

inline void cmd_bracket(const std::string& fn, const std::string& a_text, const std::string& b_text, long m, long n,
                        bool log_mode, const std::optional<std::string>& oracle_text, const RunConfig& cfg,
                        Emitter& em) {
  const FnSpec f = lookup_function(fn);
  const Numeric a = parse_number(a_text, "--a");
  const Numeric b = parse_number(b_text, "--b");
  const std::optional<Numeric> oracle =
      oracle_text ? std::optional<Numeric>(parse_number(*oracle_text, "--oracle")) : std::nullopt;
  const Context ctx = cfg.context();
  Json rec;
  rec["command"] = log_mode ? "bracket-log" : "bracket";
  rec["fn"] = f.name;
  rec["a"] = to_json(a);
  rec["b"] = to_json(b);
  rec["m"] = m;
  rec["n"] = n;
  std::vector<Verdict> verdicts;
  Bracket bracket;
  std::vector<std::string> diagnostics;
  Precision precision = 0;
  if (log_mode) {
    const LogBracketReport r = log_bracket(f, a, b, m, n, ctx);
    bracket = r.geo;
    verdicts = {r.order, r.ratio_interior_verdict, r.ratio_full_verdict};
    rec["ratio_interior"] = to_json(r.ratio_interior);
    rec["ratio_full"] = to_json(r.ratio_full);
    diagnostics = r.diagnostics;
    precision = r.precision;
  } else {
    const BracketReport r = hh_bracket(f, a, b, m, n, ctx);
    bracket = r.bracket;
    verdicts = {r.order};
    rec["reversed"] = r.reversed;
    diagnostics = r.diagnostics;
    precision = r.precision;
  }
  rec["bracket"] = to_json(bracket);
  if (oracle) {
    rec["oracle"] = to_json(*oracle);
    const auto [lo, hi] = bracket.contains(*oracle);
    verdicts.push_back(lo);
    verdicts.push_back(hi);
  }
  rec["verdicts"] = to_json(verdicts);
  rec["precision"] = precision;
  rec["diagnostics"] = diagnostics_json(diagnostics);
  em.note(verdicts);
  em.record(std::move(rec));
}

inline SequenceKind parse_kind(const std::string& k) {
  if (k == "A") return SequenceKind::A;
  if (k == "B") return SequenceKind::B;
  if (k == "S") return SequenceKind::S;
  if (k == "T") return SequenceKind::T;
  throw UnknownName("unknown sequence kind '" + k + "' (expected A, B, S or T)");
}

inline Json gap_chain_json(const GapChain& g) {
  Json j;
  j["lower"] = to_json(g.lower);
  j["value"] = to_json(g.value);
  j["upper"] = to_json(g.upper);
  j["left"] = to_json(g.left);
  j["right"] = to_json(g.right);
  return j;
}

inline Json side_json(const SideReport& s) {
  Json j;
  j["lhs"] = to_json(s.lhs);
  j["rhs"] = to_json(s.rhs);
  j["verdict"] = to_json(s.verdict);
  j["strictness_condition"] = s.strictness_condition;
  return j;
}

inline std::vector<Numeric> parse_points(const std::string& text, const std::string& flag) {
  return parse_list(text, flag);
}

inline MeanKind parse_mean_kind(const std::string& kind, const std::optional<std::string>& p_text) {
  if (kind == "lp") {
    if (!p_text) throw UsageError("--p is required for the lp mean");
    return MeanKind::lp(parse_number(*p_text, "--p"));
  }
  if (kind == "identric") return MeanKind::identric();
  if (kind == "logarithmic") return MeanKind::logarithmic();
  throw UnknownName("unknown mean kind '" + kind + "' (expected lp, identric or logarithmic)");
}

inline Json family_json(const FamilyReport& r) {
  Json j;
  j["family"] = to_string(r.family);
  j["n"] = r.n;
  if (r.r) j["r"] = r.r->str();
  j["ratio"] = to_json(r.ratio);
  if (r.factorial) j["factorial_ratio"] = to_json(*r.factorial);
  j["reversed"] = r.reversed;
  j["checks"] = to_json(r.checks);
  j["status"] = to_string(r.status());
  Numeric margin = r.checks.front().margin;
  for (const auto& c : r.checks) margin = min(margin, c.margin);
  j["margin"] = to_json(margin);
  j["precision"] = r.precision;
  return j;
}

inline std::vector<Numeric> parse_vector(const std::string& text, const std::string& flag) {
  return parse_list(text, flag);
}

inline Json trig_bounds_json(const TrigBoundsReport& r) {
  Json j;
  if (r.lower) j["lower"] = to_json(*r.lower);
  j["value"] = to_json(r.value);
  if (r.upper) j["upper"] = to_json(*r.upper);
  Json v = Json::array();
  if (r.lower_verdict) v.push_back(to_json(*r.lower_verdict));
  if (r.upper_verdict) v.push_back(to_json(*r.upper_verdict));
  j["verdicts"] = v;
  j["precision"] = r.precision;
  return j;
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds from monotone Riemann sums of convex functions"};
  app.require_subcommand(1);
  // Global flags are accepted after the subcommand as well.
  app.fallthrough();
  RunConfig cfg;
  if (const char* env = std::getenv("CB_PRECISION_BITS")) {
    try {
      cfg.precision_bits = std::stol(env);
    } catch (const std::exception&) {
      err << "error: CB_PRECISION_BITS must be an integer\n";
      return 2;
    }
  }
  bool csv = false;
  bool pretty = false;
  app.add_option("--precision", cfg.precision_bits, "working precision in bits (>= 53)")
      ->capture_default_str()
      ->check(CLI::Range(53L, 1L << 20));
  app.add_option("--max-retries", cfg.max_retries, "precision doublings before Inconclusive")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "offset of the convexity spot-check sample sequence")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "worker threads for sweeps")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--csv", csv, "write CSV");
  app.add_flag("--pretty", pretty, "write human-readable text");

  Emitter em;
  std::function<void()> action;

  // bracket
  struct {
    std::string fn, a, b;
    long m = 2, n = 1;
    bool log = false;
    std::optional<std::string> oracle;
  } br;
  auto* bracket = app.add_subcommand("bracket", "bracket the integral of a registered function");
  bracket->add_option("--fn", br.fn, "function name")->required();
  bracket->add_option("--a", br.a)->required();
  bracket->add_option("--b", br.b)->required();
  bracket->add_option("--m", br.m, "order of the interior-point side")->capture_default_str();
  bracket->add_option("--n", br.n, "order of the all-point side")->capture_default_str();
  bracket->add_flag("--log", br.log, "geometric-mean bracket for a log-convex function");
  bracket->add_option("--oracle", br.oracle, "known value to test for containment");
  bracket->callback([&] {
    action = [&] { detail::cmd_bracket(br.fn, br.a, br.b, br.m, br.n, br.log, br.oracle, cfg, em); };
  });

  // sequence
  struct {
    std::string fn, a, b, kind = "A", oracle, x, y;
    long n = 1, n_max = 100;
    std::optional<std::string> tol;
  } sq;
  auto* sequence = app.add_subcommand("sequence", "Riemann-sum sequences");
  sequence->require_subcommand(1);
  auto* seq_value = sequence->add_subcommand("value", "A_n, B_n, S_n or T_n");
  seq_value->add_option("--kind", sq.kind, "A, B, S or T")->capture_default_str();
  seq_value->add_option("--fn", sq.fn)->required();
  seq_value->add_option("--a", sq.a)->required();
  seq_value->add_option("--b", sq.b)->required();
  seq_value->add_option("--n", sq.n)->required();
  seq_value->callback([&] {
    action = [&] {
      const FnSpec f = lookup_function(sq.fn);
      const Numeric a = parse_number(sq.a, "--a");
      const Numeric b = parse_number(sq.b, "--b");
      const SequenceKind kind = detail::parse_kind(sq.kind);
      Json rec;
      rec["command"] = "sequence-value";
      rec["fn"] = f.name;
      rec["kind"] = to_string(kind);
      rec["n"] = sq.n;
      rec["value"] = to_json(sequence_value(kind, f, a, b, sq.n, cfg.precision_bits));
      rec["precision"] = cfg.precision_bits;
      em.record(std::move(rec));
    };
  });
  auto* seq_limit = sequence->add_subcommand("limit", "monotone convergence of A_n/(b-a) and B_n/(b-a)");
  seq_limit->add_option("--fn", sq.fn)->required();
  seq_limit->add_option("--a", sq.a)->required();
  seq_limit->add_option("--b", sq.b)->required();
  seq_limit->add_option("--n-max", sq.n_max)->capture_default_str();
  seq_limit->add_option("--oracle", sq.oracle, "independent value of the mean of f over [a, b]")->required();
  seq_limit->add_option("--tol", sq.tol, "tolerance for both gaps at n-max");
  seq_limit->callback([&] {
    action = [&] {
      const FnSpec f = lookup_function(sq.fn);
      std::optional<Numeric> tol;
      if (sq.tol) tol = parse_number(*sq.tol, "--tol");
      const LimitReport r = sequence_limit_check(f, parse_number(sq.a, "--a"), parse_number(sq.b, "--b"), sq.n_max,
                                                 parse_number(sq.oracle, "--oracle"), cfg.context(), tol);
      Json rec;
      rec["command"] = "sequence-limit";
      rec["fn"] = f.name;
      rec["n_max"] = r.n_max;
      rec["a_mean_last"] = to_json(r.a_means.back());
      rec["b_mean_last"] = to_json(r.b_means.back());
      rec["upper_gap"] = to_json(r.upper_gap);
      rec["lower_gap"] = to_json(r.lower_gap);
      rec["reversed"] = r.reversed;
      std::vector<Verdict> v = {r.a_decreasing, r.b_increasing, r.contains_oracle};
      if (r.within_tolerance) v.push_back(*r.within_tolerance);
      rec["verdicts"] = to_json(v);
      rec["first_offending_n"] = r.first_offending_n ? Json(*r.first_offending_n) : Json(nullptr);
      rec["precision"] = r.precision;
      rec["diagnostics"] = detail::diagnostics_json(r.diagnostics);
      em.note(v);
      em.record(std::move(rec));
    };
  });
  auto* seq_st = sequence->add_subcommand("st", "right/left-endpoint sums against the integral");
  seq_st->add_option("--fn", sq.fn)->required();
  seq_st->add_option("--a", sq.a)->required();
  seq_st->add_option("--b", sq.b)->required();
  seq_st->add_option("--n", sq.n)->required();
  seq_st->callback([&] {
    action = [&] {
      const FnSpec f = lookup_function(sq.fn);
      const STReport r = st_refinement(f, parse_number(sq.a, "--a"), parse_number(sq.b, "--b"), sq.n, cfg.context());
      Json rec;
      rec["command"] = "sequence-st";
      rec["fn"] = f.name;
      rec["n"] = sq.n;
      rec["s_gap"] = detail::gap_chain_json(r.s_gap);
      rec["t_gap"] = detail::gap_chain_json(r.t_gap);
      if (r.s_decreasing) rec["s_decreasing"] = to_json(*r.s_decreasing);
      if (r.t_increasing) rec["t_increasing"] = to_json(*r.t_increasing);
      rec["reversed"] = r.reversed;
      rec["precision"] = r.precision;
      rec["diagnostics"] = detail::diagnostics_json(r.diagnostics);
      em.note(std::vector<Verdict>{r.s_gap.left, r.s_gap.right, r.t_gap.left, r.t_gap.right});
      em.note(r.s_decreasing);
      em.note(r.t_increasing);
      em.record(std::move(rec));
    };
  });
  auto* seq_part = sequence->add_subcommand("partition", "two-partition inequality for interleaved grids");
  seq_part->add_option("--fn", sq.fn)->required();
  seq_part->add_option("--x", sq.x, "coarse partition, comma separated")->required();
  seq_part->add_option("--y", sq.y, "fine partition, comma separated")->required();
  seq_part->callback([&] {
    action = [&] {
      const FnSpec f = lookup_function(sq.fn);
      const Partition x(detail::parse_points(sq.x, "--x"));
      const Partition y(detail::parse_points(sq.y, "--y"));
      const TwoPartitionReport r = two_partition_sides(f, x, y, cfg.context());
      Json rec;
      rec["command"] = "sequence-partition";
      rec["fn"] = f.name;
      rec["ineq2"] = detail::side_json(r.ineq2);
      rec["ineq1"] = detail::side_json(r.ineq1);
      Json c;
      c["lhs"] = to_json(r.combined.lhs);
      c["rhs_fine"] = to_json(r.combined.rhs_fine);
      c["rhs_coarse"] = to_json(r.combined.rhs_coarse);
      c["verdict"] = to_json(r.combined.verdict);
      rec["combined"] = c;
      rec["precision"] = r.precision;
      rec["diagnostics"] = detail::diagnostics_json(r.diagnostics);
      em.note(std::vector<Verdict>{r.ineq2.verdict, r.ineq1.verdict, r.combined.verdict});
      em.record(std::move(rec));
    };
  });

  // means
  struct {
    std::string kind = "identric", a, b, r;
    std::optional<std::string> p;
    long n = 2, m = 2, m_max = 10;
  } mn;
  auto* means = app.add_subcommand("means", "p-logarithmic, identric and logarithmic means");
  means->require_subcommand(1);
  auto* mean_value_cmd = means->add_subcommand("value", "value of a mean");
  mean_value_cmd->add_option("--kind", mn.kind, "lp, identric or logarithmic")->capture_default_str();
  mean_value_cmd->add_option("--p", mn.p, "exponent of the lp mean");
  mean_value_cmd->add_option("--a", mn.a)->required();
  mean_value_cmd->add_option("--b", mn.b)->required();
  mean_value_cmd->callback([&] {
    action = [&] {
      const MeanKind kind = detail::parse_mean_kind(mn.kind, mn.p);
      Json rec;
      rec["command"] = "means-value";
      rec["kind"] = kind.name();
      rec["value"] = to_json(
          mean_value(kind, parse_number(mn.a, "--a"), parse_number(mn.b, "--b"), cfg.precision_bits));
      rec["precision"] = cfg.precision_bits;
      em.record(std::move(rec));
    };
  });
  auto* lp_cmd = means->add_subcommand("lp-bracket", "power-mean bracket of L_r(a, b)");
  lp_cmd->add_option("--a", mn.a)->required();
  lp_cmd->add_option("--b", mn.b)->required();
  lp_cmd->add_option("--r", mn.r)->required();
  lp_cmd->add_option("--n", mn.n)->capture_default_str();
  lp_cmd->callback([&] {
    action = [&] {
      const LpBracketReport r = lp_bracket(parse_number(mn.a, "--a"), parse_number(mn.b, "--b"),
                                           parse_number(mn.r, "--r"), mn.n, cfg.context());
      Json rec;
      rec["command"] = "means-lp-bracket";
      rec["n"] = mn.n;
      rec["r"] = mn.r;
      rec["bracket"] = to_json(r.bracket);
      rec["mean"] = to_json(r.mean);
      rec["reversed"] = r.reversed;
      std::vector<Verdict> v = {r.lower_verdict, r.upper_verdict};
      if (r.ratios.interior_verdict) v.push_back(*r.ratios.interior_verdict);
      if (r.ratios.full_verdict) v.push_back(*r.ratios.full_verdict);
      rec["verdicts"] = to_json(v);
      rec["precision"] = r.precision;
      em.note(v);
      em.record(std::move(rec));
    };
  });
  auto* id_cmd = means->add_subcommand("identric-bracket", "geometric-mean bracket of I(a, b)");
  id_cmd->add_option("--a", mn.a)->required();
  id_cmd->add_option("--b", mn.b)->required();
  id_cmd->add_option("--n", mn.n)->capture_default_str();
  id_cmd->callback([&] {
    action = [&] {
      const IdentricBracketReport r =
          identric_bracket(parse_number(mn.a, "--a"), parse_number(mn.b, "--b"), mn.n, cfg.context());
      Json rec;
      rec["command"] = "means-identric-bracket";
      rec["n"] = mn.n;
      rec["bracket"] = to_json(r.bracket);
      rec["mean"] = to_json(r.mean);
      rec["full_ratio"] = to_json(r.full_ratio);
      rec["interior_ratio"] = to_json(r.interior_ratio);
      std::vector<Verdict> v = {r.lower_verdict, r.upper_verdict, r.full_verdict, r.interior_verdict};
      rec["verdicts"] = to_json(v);
      rec["precision"] = r.precision;
      em.note(v);
      em.record(std::move(rec));
    };
  });
  auto* idr_cmd = means->add_subcommand("identric-ratio", "bounds of I(1-b, 1-a)/I(a, b) for 0 < a < b <= 1/2");
  idr_cmd->add_option("--a", mn.a)->required();
  idr_cmd->add_option("--b", mn.b)->required();
  idr_cmd->add_option("--m", mn.m)->capture_default_str();
  idr_cmd->add_option("--n", mn.n)->capture_default_str();
  idr_cmd->callback([&] {
    action = [&] {
      const IdentricRatioReport r =
          identric_ratio_bounds(parse_number(mn.a, "--a"), parse_number(mn.b, "--b"), mn.m, mn.n, cfg.context());
      Json rec;
      rec["command"] = "means-identric-ratio";
      rec["m"] = mn.m;
      rec["n"] = mn.n;
      rec["ratio"] = to_json(r.ratio);
      rec["lower"] = to_json(r.lower_product);
      rec["upper"] = to_json(r.upper_product);
      rec["special_lower"] = to_json(r.special_lower);
      rec["special_upper"] = to_json(r.special_upper);
      std::vector<Verdict> v = {r.lower_verdict,          r.upper_verdict,         r.chain_interior_verdict,
                                r.chain_full_verdict,     r.special_lower_verdict, r.special_upper_verdict};
      rec["verdicts"] = to_json(v);
      rec["precision"] = r.precision;
      em.note(v);
      em.record(std::move(rec));
    };
  });
  auto* bin_cmd = means->add_subcommand("binomial", "C(2m+1, m)^{1/m} for m = 2..m-max");
  bin_cmd->add_option("--m-max", mn.m_max)->capture_default_str();
  bin_cmd->callback([&] {
    action = [&] {
      for (long m = 2; m <= mn.m_max; ++m) {
        const CentralBinomialReport r = central_binomial_step(m, cfg.context());
        Json rec;
        rec["command"] = "means-binomial";
        rec["m"] = m;
        rec["binomial"] = r.binom.get_str();
        rec["value"] = to_json(r.value);
        std::vector<Verdict> v = {r.increasing, r.below_four};
        rec["verdicts"] = to_json(v);
        rec["precision"] = r.precision;
        em.note(v);
        em.record(std::move(rec));
      }
      em.summary(Json{{"records", mn.m_max >= 2 ? mn.m_max - 1 : 0}, {"verdict_statuses", em.status_counts()}});
    };
  });

  // verify
  struct {
    std::string family, n = "1", r;
    bool cross_check = false;
  } vf;
  auto* verify = app.add_subcommand("verify", "sweep a power-sum inequality family over n and r");
  verify->add_option("--family", vf.family,
                     "alzer, bennett, refined-alzer, minc-sathre, minc-sathre-refined, martins, martins-reversed, "
                     "power-sum-bounds or factorial-lower")
      ->required();
  verify->add_option("--n", vf.n, "integer or range lo..hi")->capture_default_str();
  verify->add_option("--r", vf.r, "comma-separated exponents");
  verify->add_flag("--cross-check", vf.cross_check, "re-derive bennett/refined-alzer through the L_r ratio chain");
  verify->callback([&] {
    action = [&] {
      const auto [n_lo, n_hi] = parse_int_range(vf.n, "--n");
      const Context ctx = cfg.context();
      long records = 0;
      long disagreements = 0;
      // One status per record: the worst of its checks.
      Json statuses;
      for (Status s : {Status::HoldsStrictly, Status::HoldsWithEquality, Status::Violated, Status::Inconclusive}) {
        statuses[to_string(s)] = 0;
      }
      auto tally = [&](Status s) {
        statuses[to_string(s)] = statuses[to_string(s)].get<long>() + 1;
        ++records;
      };
      if (vf.family == "factorial-lower") {
        for (long n = n_lo; n <= n_hi; ++n) {
          const FactorialLowerReport r = factorial_lower(n, ctx);
          Json rec;
          rec["family"] = vf.family;
          rec["n"] = n;
          rec["checks"] = to_json(std::vector<Verdict>{r.verdict});
          rec["status"] = to_string(r.verdict.status);
          rec["margin"] = to_json(r.verdict.margin);
          rec["precision"] = r.precision;
          em.note(r.verdict);
          em.record(std::move(rec));
          tally(r.verdict.status);
        }
      } else if (vf.family == "power-sum-bounds") {
        if (vf.r.empty()) throw UsageError("--r is required for power-sum-bounds");
        for (const Numeric& r : parse_list(vf.r, "--r")) {
          for (long n = n_lo; n <= n_hi; ++n) {
            const PowerSumBoundsReport b = power_sum_bounds(n, r, ctx);
            std::vector<Verdict> v;
            if (b.lower_verdict) v.push_back(*b.lower_verdict);
            v.push_back(b.upper_verdict);
            Status s = Status::HoldsStrictly;
            Numeric margin = v.front().margin;
            for (const auto& x : v) {
              s = combine(s, x.status);
              margin = min(margin, x.margin);
            }
            Json rec;
            rec["family"] = vf.family;
            rec["n"] = n;
            rec["r"] = r.str();
            rec["sum"] = to_json(b.sum);
            rec["reversed"] = b.reversed;
            rec["checks"] = to_json(v);
            rec["status"] = to_string(s);
            rec["margin"] = to_json(margin);
            rec["precision"] = b.precision;
            em.note(v);
            em.record(std::move(rec));
            tally(s);
          }
        }
      } else {
        const Family family = parse_family(vf.family);
        std::vector<std::optional<Numeric>> rs;
        if (family_uses_r(family)) {
          if (vf.r.empty()) throw UsageError("--r is required for " + vf.family);
          for (const Numeric& r : parse_list(vf.r, "--r")) rs.emplace_back(r);
        } else {
          rs.emplace_back(std::nullopt);
        }
        for (const auto& r : rs) {
          for (long n = n_lo; n <= n_hi; ++n) {
            const FamilyReport rep = verify_family(family, PowerSumQuery{n, r}, ctx);
            Json rec = detail::family_json(rep);
            if (vf.cross_check) {
              const FamilyReport again = rederive_via_means(family, PowerSumQuery{n, r}, ctx);
              bool agree = again.checks.size() == rep.checks.size();
              for (std::size_t i = 0; agree && i < rep.checks.size(); ++i) {
                agree = again.checks[i].status == rep.checks[i].status;
              }
              rec["cross_check"] = Json{{"status", to_string(again.status())}, {"agrees", agree}};
              if (!agree) {
                ++disagreements;
                em.note(Status::Violated);
              }
            }
            em.note(rep.checks);
            em.record(std::move(rec));
            tally(rep.status());
          }
        }
      }
      Json summary{{"records", records}, {"statuses", statuses}};
      if (vf.cross_check) summary["cross_check_disagreements"] = disagreements;
      em.summary(std::move(summary));
    };
  });

  // normed
  struct {
    std::string x, y, norm_p = "2", power_p = "2";
    long n = 2;
    std::optional<std::string> t;
  } nm;
  auto* normed = app.add_subcommand("normed", "integral of ||(1-t)x + ty||^p over [0, 1]");
  normed->add_option("--x", nm.x, "comma-separated coordinates")->required();
  normed->add_option("--y", nm.y, "comma-separated coordinates")->required();
  normed->add_option("--norm-p", nm.norm_p, "norm exponent q >= 1")->capture_default_str();
  normed->add_option("--power-p", nm.power_p, "power p >= 1")->capture_default_str();
  normed->add_option("--n", nm.n, "grid order")->capture_default_str();
  normed->add_option("--t", nm.t, "evaluate phi at t instead of bracketing");
  normed->callback([&] {
    action = [&] {
      VectorPair vp{detail::parse_vector(nm.x, "--x"), detail::parse_vector(nm.y, "--y"),
                    parse_number(nm.norm_p, "--norm-p"), parse_number(nm.power_p, "--power-p")};
      Json rec;
      if (nm.t) {
        rec["command"] = "normed-phi";
        rec["t"] = *nm.t;
        rec["value"] = to_json(phi_eval(vp, parse_number(*nm.t, "--t"), cfg.precision_bits));
        rec["precision"] = cfg.precision_bits;
        em.record(std::move(rec));
        return;
      }
      const NormedBracketReport r = segment_integral_bracket(vp, nm.n, cfg.context());
      rec["command"] = "normed-bracket";
      rec["n"] = nm.n;
      rec["lower"] = r.lower ? to_json(*r.lower) : Json(nullptr);
      rec["upper"] = to_json(r.upper);
      rec["oracle"] = r.oracle ? to_json(*r.oracle) : Json(nullptr);
      rec["independent"] = r.independent ? Json(*r.independent) : Json(nullptr);
      rec["strict_expected"] = r.strict_expected;
      const std::vector<Verdict> v = r.all_verdicts();
      rec["verdicts"] = to_json(v);
      rec["precision"] = r.precision;
      em.note(v);
      em.record(std::move(rec));
    };
  });

  // trig
  struct {
    std::string fn, n = "3", x = "pi/2", range = "2.001..100", step = "1/1000";
    long n_max = 100;
    bool no_rows = false;
  } tg;
  auto* trig = app.add_subcommand("trig", "trigonometric bounds");
  trig->require_subcommand(1);
  auto* tb = trig->add_subcommand("bounds", "bounds at one argument");
  tb->add_option("--fn", tg.fn, "tan, cos, sin, cot, sinc, tan-half or tan-step")->required();
  tb->add_option("--n", tg.n, "argument n (real > 2 for tan/cos/sin)")->capture_default_str();
  tb->add_option("--x", tg.x, "angle in (0, pi/2] for cot and sinc")->capture_default_str();
  tb->callback([&] {
    action = [&] {
      Json rec;
      rec["command"] = "trig-bounds";
      rec["fn"] = tg.fn;
      if (tg.fn == "cot" || tg.fn == "sinc") {
        const Angle x = parse_angle(tg.x, "--x");
        const long n = as_integer(parse_number(tg.n, "--n"), "--n");
        const TrigBoundsReport r = tg.fn == "cot" ? cot_bounds(x, n, cfg.context()) : sinc_bounds(x, n, cfg.context());
        rec["x"] = x.str();
        rec["n"] = n;
        rec.update(detail::trig_bounds_json(r));
        em.note(r.lower_verdict);
        em.note(r.upper_verdict);
      } else if (tg.fn == "tan-half") {
        const long n = as_integer(parse_number(tg.n, "--n"), "--n");
        const TanHalfReport r = tan_half_bounds(n, cfg.context());
        rec["n"] = n;
        rec["lower"] = to_json(r.lower);
        rec["value"] = to_json(r.value);
        rec["upper"] = to_json(r.upper);
        rec["verdicts"] = to_json(std::vector<Verdict>{r.lower_verdict, r.upper_verdict});
        rec["telescoped_lower"] = r.telescoped_lower.get_str();
        rec["telescoped_upper"] = r.telescoped_upper.get_str();
        rec["precision"] = r.precision;
        em.note(r.lower_verdict);
        em.note(r.upper_verdict);
      } else if (tg.fn == "tan-step") {
        const long k = as_integer(parse_number(tg.n, "--n"), "--n");
        const TrigBoundsReport r = tan_step_ratio(k, cfg.context());
        rec["k"] = k;
        rec.update(detail::trig_bounds_json(r));
        em.note(r.lower_verdict);
        em.note(r.upper_verdict);
      } else {
        const TrigFn fn = parse_trig_fn(tg.fn);
        const RationalTrigReport r = rational_trig_bounds(fn, parse_number(tg.n, "--n"), cfg.context());
        rec["n"] = r.arg.str();
        rec["lower"] = to_json(r.lower);
        rec["value"] = to_json(r.value);
        rec["upper"] = to_json(r.upper);
        rec["verdicts"] = to_json(std::vector<Verdict>{r.lower_verdict, r.upper_verdict});
        rec["gap"] = to_json(r.gap);
        rec["gap_formula"] = to_json(r.gap_formula);
        rec["gap_matches"] = r.gap_matches ? Json(*r.gap_matches) : Json(nullptr);
        rec["conjectural"] = r.conjectural;
        rec["precision"] = r.precision;
        em.note(r.lower_verdict);
        em.note(r.upper_verdict);
        if (r.gap_matches == std::optional<bool>(false)) em.note(Status::Violated);
      }
      em.record(std::move(rec));
    };
  });
  auto* tgaps = trig->add_subcommand("gaps", "scaled gap of the rational bounds for n = 3..n-max");
  tgaps->add_option("--fn", tg.fn, "tan, cos or sin")->required();
  tgaps->add_option("--n-max", tg.n_max)->capture_default_str();
  tgaps->callback([&] {
    action = [&] {
      const TrigFn fn = parse_trig_fn(tg.fn);
      const GapAsymptoticsReport r = gap_asymptotics(fn, tg.n_max);
      for (const auto& row : r.rows) {
        Json rec;
        rec["fn"] = to_string(fn);
        rec["n"] = row.n;
        rec["gap"] = row.gap.get_str();
        rec["scaled_gap"] = row.scaled.get_str();
        rec["scaled_gap_float"] = row.scaled.get_d();
        rec["matches_formula"] = row.matches_formula;
        em.record(std::move(rec));
      }
      const mpq_class last = r.rows.back().scaled;
      em.summary(Json{{"fn", to_string(fn)},
                      {"scaling", r.order == 2 ? "n^2" : "n"},
                      {"limit", r.limit},
                      {"final_scaled_gap", last.get_d()},
                      {"relative_deviation", mpq_class(abs(last - r.limit) / r.limit).get_d()},
                      {"all_match_formula", r.all_match},
                      {"deviation_bound", std::to_string(r.deviation_constant) + "/n for n >= 10"},
                      {"deviation_bound_holds", r.deviation_bound_holds},
                      {"monotone_from", r.monotone_from}});
      if (!r.all_match || !r.deviation_bound_holds) em.note(Status::Violated);
    };
  });
  auto* tconj = trig->add_subcommand("conjecture", "sweep the rational bounds over real arguments");
  tconj->add_option("--fn", tg.fn, "tan, cos or sin")->required();
  tconj->add_option("--x", tg.range, "range lo..hi with lo > 2")->capture_default_str();
  tconj->add_option("--step", tg.step, "grid step")->capture_default_str();
  tconj->add_flag("--no-rows", tg.no_rows, "emit only the summary");
  tconj->callback([&] {
    action = [&] {
      const TrigFn fn = parse_trig_fn(tg.fn);
      const auto [lo, hi] = parse_range(tg.range, "--x");
      const Numeric step = parse_number(tg.step, "--step");
      SweepOptions opts;
      opts.keep_rows = !tg.no_rows;
      opts.workers = cfg.jobs;
      const ConjectureReport r = conjecture_sweep(fn, lo.exact(), hi.exact(), step.exact(), cfg.context(), opts);
      for (const auto& row : r.rows) {
        Json rec;
        rec["x"] = row.x.get_str();
        rec["x_float"] = row.x.get_d();
        rec["lower"] = row.lower;
        rec["value"] = row.value;
        rec["upper"] = row.upper;
        rec["margin"] = row.margin;
        em.record(std::move(rec));
      }
      Json violations = Json::array();
      for (const auto& v : r.violations) violations.push_back(v.get_str());
      Json undecided = Json::array();
      for (const auto& v : r.inconclusive) undecided.push_back(v.get_str());
      em.summary(Json{{"fn", to_string(fn)},
                      {"label", ConjectureReport::kLabel},
                      {"x_min", r.x_min.get_str()},
                      {"x_max", r.x_max.get_str()},
                      {"step", r.step.get_str()},
                      {"samples", r.samples},
                      {"refinements", r.refinements},
                      {"min_margin", to_json(r.min_margin)},
                      {"argmin", r.argmin.get_str()},
                      {"violations", violations},
                      {"inconclusive", undecided},
                      {"note", "x near 2 is sampled from x_min = " + r.x_min.get_str() +
                                   "; the bounds' denominators vanish at x = 2"}});
      if (!r.violations.empty()) em.note(Status::Violated);
      if (!r.inconclusive.empty()) em.note(Status::Inconclusive);
    };
  });

  std::vector<const char*> argv;
  argv.push_back("cbounds");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (csv && pretty) {
    err << "error: --csv and --pretty are exclusive\n";
    return 2;
  }
  cfg.format = csv ? Format::Csv : (pretty ? Format::Pretty : Format::Jsonl);
  if (!action) {
    err << "error: no command given\n";
    return 2;
  }
  try {
    action();
  } catch (const UnknownName& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 3;
  }
  em.write(out, cfg.format);
  return em.exit_code();
}

}  // namespace cbounds::cli
