#pragma once

// Command-line front end: flag parsing into a RunConfig and execution of
// one subcommand into a single Table.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "padfix/arith.hpp"
#include "padfix/counting.hpp"
#include "padfix/dynamics.hpp"
#include "padfix/parallel.hpp"
#include "padfix/statistics.hpp"
#include "padfix/table.hpp"

namespace padfix::cli {

/// A bad flag value or flag combination; the message names the flag.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// --help was given; carries the rendered help text.
class HelpRequested : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Range {
  i64 lo = 0;
  i64 hi = 0;
  friend bool operator==(const Range&, const Range&) = default;
};

enum class Format { Csv, Json };
enum class ModeSel { Literal, Predicted, Both };

struct RunConfig {
  std::string subcommand;
  Family family = Family::DegreeP;
  std::optional<Range> primes;
  std::optional<Range> coefficients;
  ModeSel mode = ModeSel::Both;
  Format format = Format::Csv;
  std::string out_path;  ///< empty means standard output
  unsigned workers = 1;

  // orbit / fixedpoints
  i64 degree = 2;
  std::string c_text;
  std::string z0_text;
  bool rational = false;
  std::size_t cutoff_bits = kDefaultCutoffBits;

  // verify
  bool c_multiples = false;
  Range t_range{1, 10};
  bool extended = false;

  // avg
  Filter filter = Filter::DividesC;
  i64 t_count = 10;

  // density
  DensityKind kind = DensityKind::OmegaOverPi;
  i64 stride = 1;

  // fields
  std::optional<Range> degrees;
  std::optional<Range> xs;
};

inline i64 parse_i64(const std::string& flag, std::string_view s) {
  i64 v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw UsageError(flag + ": not a 63-bit integer: '" + std::string(s) + "'");
  return v;
}

/// "lo:hi" inclusive, or a single value.
inline Range parse_range(const std::string& flag, const std::string& text) {
  const auto colon = text.find(':', 1);
  Range r;
  if (colon == std::string::npos) {
    r.lo = r.hi = parse_i64(flag, text);
  } else {
    r.lo = parse_i64(flag, std::string_view(text).substr(0, colon));
    r.hi = parse_i64(flag, std::string_view(text).substr(colon + 1));
  }
  if (r.lo > r.hi) throw UsageError(flag + ": empty range " + text);
  return r;
}

namespace detail {

inline Family parse_family(const std::string& s) {
  if (s == "p") return Family::DegreeP;
  if (s == "p-1") return Family::DegreePMinus1;
  throw UsageError("--family: expected 'p' or 'p-1', got '" + s + "'");
}

inline ModeSel parse_mode(const std::string& s) {
  if (s == "literal") return ModeSel::Literal;
  if (s == "predicted") return ModeSel::Predicted;
  if (s == "both") return ModeSel::Both;
  throw UsageError("--mode: expected literal, predicted or both, got '" + s + "'");
}

inline Filter parse_filter(const std::string& s) {
  for (Filter f : {Filter::DividesC, Filter::DividesCMinus1, Filter::DividesCPlus1, Filter::NotDividesC})
    if (s == to_string(f)) return f;
  throw UsageError("--filter: unknown filter '" + s + "'");
}

inline DensityKind parse_kind(const std::string& s) {
  for (DensityKind k : {DensityKind::OmegaOverPi, DensityKind::MDensity2, DensityKind::MDensity1,
                        DensityKind::NZeroDensity, DensityKind::MZeroDensity})
    if (s == to_string(k)) return k;
  throw UsageError("--kind: unknown kind '" + s + "'");
}

inline std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

template <class T>
std::string join_points(const std::vector<T>& pts) {
  std::vector<std::string> parts;
  for (const auto& p : pts) {
    if constexpr (std::is_same_v<T, RationalPoint>) parts.push_back(p.str());
    else parts.push_back(std::to_string(p));
  }
  return join(parts);
}

inline std::vector<i64> primes_for(const RunConfig& cfg, const char* flag, i64 min_prime) {
  if (!cfg.primes) throw UsageError(std::string(flag) + ": required");
  if (cfg.primes->lo < min_prime)
    throw UsageError(std::string(flag) + ": primes must be >= " + std::to_string(min_prime) + " for this family");
  auto ps = primes_in(cfg.primes->lo, cfg.primes->hi);
  if (ps.empty()) throw UsageError(std::string(flag) + ": no primes in range");
  return ps;
}

}  // namespace detail

inline std::string help_footer() {
  return R"(Output columns per subcommand:
  orbit        d,c,p,z0,status,preperiod,period,tail,cycle   (p is Q for --rational)
  fixedpoints  d,p,c,count,residues
  count        family,p,c,residue,literal,predicted,theorem,verdict
  verify       family,p,c,residue,literal,predicted,theorem,verdict
  avg          family,filter,mode,prime_lo,prime_hi,t_range,sample_count,sum,mean,mean_float
  density      kind,mode,c,numerator,denominator,pi,ratio,ratio_float
  fields       degree,x,coefficient_bound,total,with_integer_root,without_integer_root
Ranges are lo:hi (inclusive) or a single value. Exit status: 0 ok, 1 internal error, 2 usage error.
Worker count: --jobs, else $PADFIX_JOBS, else hardware concurrency.)";
}

/// Builds a RunConfig from argv. Throws UsageError on bad input and
/// HelpRequested for --help.
inline RunConfig parse_args(int argc, const char* const* argv, std::optional<std::string> env_jobs = std::nullopt) {
  CLI::App app{"Fixed points of z^d + c modulo primes: counts, predictions, averages and densities", "padfix"};
  app.require_subcommand(1);
  app.footer(help_footer());

  std::string format = "csv", family = "p", mode = "both", filter = "divides-c", kind = "omega";
  std::string p_text, c_text, t_text, degree_text, x_text, stride_text;
  std::optional<unsigned> jobs;
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "output file (default: standard output)");
    sub->add_option("--jobs", jobs, "worker threads (>= 1)");
  };

  auto* orbit = app.add_subcommand("orbit", "orbit of one start point, or of every residue mod p");
  orbit->add_option("--d", cfg.degree, "map degree")->required();
  orbit->add_option("--c", cfg.c_text, "coefficient (integer, or a/b with --rational)")->required();
  orbit->add_option("--z0", cfg.z0_text, "start point (default: every residue)");
  orbit->add_option("--p", p_text, "prime modulus");
  orbit->add_flag("--rational", cfg.rational, "iterate exactly over Q");
  orbit->add_option("--cutoff-bits", cfg.cutoff_bits, "divergence cutoff for --rational");
  common(orbit);

  auto* fixedpoints = app.add_subcommand("fixedpoints", "fixed residues of z^d + c mod p");
  fixedpoints->add_option("--d", cfg.degree, "map degree")->required();
  fixedpoints->add_option("--c,--c-range", c_text, "coefficient range")->required();
  fixedpoints->add_option("--p,--p-range", p_text, "prime range")->required();
  common(fixedpoints);

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", family, "p (degree p) or p-1 (degree p-1)");
  };

  auto* count = app.add_subcommand("count", "literal and predicted fixed-point counts");
  add_family(count);
  count->add_option("--c,--c-range", c_text, "coefficient range")->required();
  count->add_option("--p,--p-range", p_text, "prime range")->required();
  count->add_option("--mode", mode, "literal, predicted or both");
  count->add_flag("--extended", cfg.extended, "use the derived extension for uncovered p-1 residues");
  common(count);

  auto* verify = app.add_subcommand("verify", "reconcile literal counts with predictions");
  add_family(verify);
  verify->add_option("--c,--c-range", c_text, "coefficient range");
  verify->add_flag("--c-multiples", cfg.c_multiples, "use c = p*t for t in --t-range");
  verify->add_option("--t-range", t_text, "multiplier range for --c-multiples (default 1:10)");
  verify->add_option("--p,--p-range", p_text, "prime range")->required();
  verify->add_flag("--extended", cfg.extended, "use the derived extension for uncovered p-1 residues");
  common(verify);

  auto* avg = app.add_subcommand("avg", "exact mean count over constructed coefficients");
  add_family(avg);
  avg->add_option("--filter", filter, "divides-c, divides-c-minus-1, divides-c-plus-1, not-divides-c");
  avg->add_option("--mode", mode, "literal, predicted or both");
  avg->add_option("--p,--p-range", p_text, "prime range")->required();
  avg->add_option("--t-range", t_text, "number of multipliers t = 1..T (default 10)");
  common(avg);

  auto* density = app.add_subcommand("density", "density series over a coefficient range");
  density->add_option("--kind", kind, "omega, m2, m1, n0 or m0");
  density->add_option("--c,--c-range", c_text, "coefficient range")->required();
  density->add_option("--stride", stride_text, "coefficient stride (default 1)");
  density->add_option("--mode", mode, "omega only: predicted (default) or literal");
  common(density);

  auto* fields = app.add_subcommand("fields", "integer-root counts of x^d - x + c up to the height bound");
  fields->add_option("--degree", degree_text, "degree range")->required();
  fields->add_option("--x", x_text, "discriminant bound range")->required();
  common(fields);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    if (app.exit(e, out, err) == 0) throw HelpRequested(out.str());
    std::string msg = err.str();
    while (!msg.empty() && msg.back() == '\n') msg.pop_back();
    throw UsageError(msg);
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  cfg.family = detail::parse_family(family);
  if (cfg.subcommand == "density" && mode == "both") mode = "predicted";
  cfg.mode = detail::parse_mode(mode);
  cfg.filter = detail::parse_filter(filter);
  cfg.kind = detail::parse_kind(kind);
  if (!p_text.empty()) cfg.primes = parse_range("--p", p_text);
  if (!c_text.empty()) cfg.coefficients = parse_range("--c", c_text);
  if (!degree_text.empty()) cfg.degrees = parse_range("--degree", degree_text);
  if (!x_text.empty()) cfg.xs = parse_range("--x", x_text);
  if (!stride_text.empty()) cfg.stride = parse_i64("--stride", stride_text);
  if (cfg.stride < 1) throw UsageError("--stride: must be >= 1");

  if (cfg.subcommand == "verify") {
    if (!t_text.empty()) cfg.t_range = parse_range("--t-range", t_text);
    if (cfg.c_multiples == cfg.coefficients.has_value())
      throw UsageError("--c-multiples: give exactly one of --c-range or --c-multiples");
    if (cfg.c_multiples && cfg.t_range.lo < 1) throw UsageError("--t-range: multipliers must be >= 1");
  }
  if (cfg.subcommand == "avg") {
    if (!t_text.empty()) cfg.t_count = parse_i64("--t-range", t_text);
    if (cfg.t_count < 1) throw UsageError("--t-range: must be >= 1");
  }
  if (cfg.subcommand == "density") {
    if (cfg.mode == ModeSel::Both) cfg.mode = ModeSel::Predicted;
    if (cfg.mode == ModeSel::Literal && cfg.kind != DensityKind::OmegaOverPi)
      throw UsageError("--mode: literal mode only applies to --kind omega (other kinds are always literal)");
  }
  if (cfg.subcommand == "orbit") {
    if (cfg.degree < 2) throw UsageError("--d: degree must be >= 2");
    if (cfg.rational && !p_text.empty()) throw UsageError("--p: not used with --rational");
    if (!cfg.rational && !cfg.primes) throw UsageError("--p: required unless --rational");
    if (cfg.rational && cfg.z0_text.empty()) throw UsageError("--z0: required with --rational");
    if (cfg.cutoff_bits < 1) throw UsageError("--cutoff-bits: must be >= 1");
  }
  if ((cfg.subcommand == "fixedpoints") && cfg.degree < 2) throw UsageError("--d: degree must be >= 2");
  if (cfg.subcommand == "fields") {
    if (cfg.degrees->lo < 2) throw UsageError("--degree: must be >= 2");
    if (cfg.xs->lo < 1) throw UsageError("--x: must be >= 1");
  }

  if (jobs) {
    cfg.workers = *jobs;
  } else if (env_jobs && !env_jobs->empty()) {
    const i64 v = parse_i64("PADFIX_JOBS", *env_jobs);
    if (v < 1) throw UsageError("PADFIX_JOBS: must be >= 1");
    cfg.workers = static_cast<unsigned>(v);
  } else {
    cfg.workers = default_workers();
  }
  if (cfg.workers < 1) throw UsageError("--jobs: must be >= 1");
  return cfg;
}

namespace detail {

inline Table run_orbit(const RunConfig& cfg) {
  Table t{{"d", "c", "p", "z0", "status", "preperiod", "period", "tail", "cycle"}, {}};
  auto status = [](OrbitStatus s) { return std::string(s == OrbitStatus::Resolved ? "Resolved" : "Divergent"); };
  if (cfg.rational) {
    RationalPoint c, z0;
    try {
      c = RationalPoint::parse(cfg.c_text);
    } catch (const RangeError&) {
      throw UsageError("--c: not a rational number: '" + cfg.c_text + "'");
    }
    try {
      z0 = RationalPoint::parse(cfg.z0_text);
    } catch (const RangeError&) {
      throw UsageError("--z0: not a rational number: '" + cfg.z0_text + "'");
    }
    const auto rec = orbit_rational(RationalMapSpec(cfg.degree, c), z0, cfg.cutoff_bits);
    t.rows.push_back({cfg.degree, c.str(), std::string("Q"), z0.str(), status(rec.status),
                      static_cast<i64>(rec.preperiod), static_cast<i64>(rec.period), join_points(rec.tail),
                      join_points(rec.cycle)});
    return t;
  }
  if (cfg.primes->lo != cfg.primes->hi) throw UsageError("--p: orbit takes a single prime");
  const i64 pv = cfg.primes->lo;
  if (pv < 2 || !is_prime(static_cast<u64>(pv))) throw UsageError("--p: not a prime: " + std::to_string(pv));
  const PrimeModulus p(pv);
  const i64 c = parse_i64("--c", cfg.c_text);
  const MapSpec map(cfg.degree, c);
  std::vector<u64> starts;
  if (cfg.z0_text.empty()) {
    for (u64 z = 0; z < p.value(); ++z) starts.push_back(z);
  } else {
    const i64 z = parse_i64("--z0", cfg.z0_text);
    if (z < 0 || z >= pv) throw UsageError("--z0: residue must lie in [0, p-1]");
    starts.push_back(static_cast<u64>(z));
  }
  const auto recs = parallel_map(starts.size(), cfg.workers, [&](std::size_t i) { return orbit_mod(map, starts[i], p); });
  for (const auto& rec : recs)
    t.rows.push_back({cfg.degree, c, pv, static_cast<i64>(rec.start), status(rec.status),
                      static_cast<i64>(rec.preperiod), static_cast<i64>(rec.period), join_points(rec.tail),
                      join_points(rec.cycle)});
  return t;
}

inline Table run_fixedpoints(const RunConfig& cfg) {
  Table t{{"d", "p", "c", "count", "residues"}, {}};
  const auto ps = primes_for(cfg, "--p", 2);
  const auto [clo, chi] = *cfg.coefficients;
  std::vector<std::pair<i64, i64>> grid;
  for (i64 p : ps)
    for (i64 c = clo;; ++c) {
      grid.emplace_back(p, c);
      if (c == chi) break;
    }
  const auto reports = parallel_map(grid.size(), cfg.workers, [&](std::size_t i) {
    return fixed_points_mod(MapSpec(cfg.degree, grid[i].second), PrimeModulus(grid[i].first));
  });
  for (const auto& r : reports)
    t.rows.push_back({cfg.degree, r.p.signed_value(), r.map.c(), static_cast<i64>(r.literal_count),
                      join_points(r.residues)});
  return t;
}

inline std::vector<Cell> comparison_row(Family fam, i64 p, i64 c, ModeSel mode, bool extended) {
  const PrimeModulus pm(p);
  const Cell blank = std::string();
  std::vector<Cell> row{std::string(to_string(fam)), p, c};
  auto prediction_cells = [&](const PredictionRecord& pred) {
    if (pred.covered()) row.emplace_back(static_cast<i64>(*pred.predicted));
    else row.emplace_back(std::string("NotCovered"));
    row.emplace_back(pred.theorem_tag);
  };
  switch (mode) {
    case ModeSel::Both: {
      const auto rec = verify(c, pm, fam, extended);
      row.insert(row.end(), {static_cast<i64>(rec.prediction.residue_class), static_cast<i64>(rec.literal)});
      prediction_cells(rec.prediction);
      row.emplace_back(std::string(to_string(rec.verdict)));
      break;
    }
    case ModeSel::Predicted: {
      const auto pred = predict(fam, c, pm, extended);
      row.insert(row.end(), {static_cast<i64>(pred.residue_class), blank});
      prediction_cells(pred);
      row.push_back(blank);
      break;
    }
    case ModeSel::Literal:
      row.insert(row.end(), {static_cast<i64>(floor_mod(c, pm.value())), static_cast<i64>(count_literal(fam, c, pm)),
                             blank, blank, blank});
      break;
  }
  return row;
}

inline Table run_comparisons(const RunConfig& cfg, ModeSel mode) {
  Table t{{"family", "p", "c", "residue", "literal", "predicted", "theorem", "verdict"}, {}};
  const auto ps = primes_for(cfg, "--p", family_min_prime(cfg.family));
  std::vector<std::pair<i64, i64>> grid;
  for (i64 p : ps) {
    if (cfg.c_multiples) {
      for (i64 k = cfg.t_range.lo; k <= cfg.t_range.hi; ++k) {
        i128 c = static_cast<i128>(p) * k;
        if (c > INT64_MAX) throw UsageError("--t-range: p*t overflows 63 bits");
        grid.emplace_back(p, static_cast<i64>(c));
      }
    } else {
      const auto [clo, chi] = *cfg.coefficients;
      for (i64 c = clo;; ++c) {
        grid.emplace_back(p, c);
        if (c == chi) break;
      }
    }
  }
  t.rows = parallel_map(grid.size(), cfg.workers, [&](std::size_t i) {
    return comparison_row(cfg.family, grid[i].first, grid[i].second, mode, cfg.extended);
  });
  return t;
}

inline Table run_avg(const RunConfig& cfg) {
  Table t{{"family", "filter", "mode", "prime_lo", "prime_hi", "t_range", "sample_count", "sum", "mean",
           "mean_float"},
          {}};
  const auto ps = primes_for(cfg, "--p", family_min_prime(cfg.family));
  (void)ps;
  std::vector<Mode> modes;
  if (cfg.mode != ModeSel::Predicted) modes.push_back(Mode::Literal);
  if (cfg.mode != ModeSel::Literal) modes.push_back(Mode::Predicted);
  for (Mode m : modes) {
    if (m == Mode::Predicted && cfg.family == Family::DegreePMinus1 && cfg.filter == Filter::NotDividesC)
      throw UsageError("--filter: not-divides-c has no closed-form prediction for family p-1; use --mode literal");
    const auto r = average(cfg.family, cfg.filter, m, cfg.primes->lo, cfg.primes->hi, cfg.t_count, cfg.workers);
    t.rows.push_back({std::string(to_string(r.family)), std::string(to_string(r.filter)), std::string(to_string(r.mode)),
                      r.prime_lo, r.prime_hi, r.t_range, r.sample_count, r.sum, r.mean.str(), r.mean.to_double()});
  }
  return t;
}

inline Table run_density(const RunConfig& cfg) {
  Table t{{"kind", "mode", "c", "numerator", "denominator", "pi", "ratio", "ratio_float"}, {}};
  const auto [clo, chi] = *cfg.coefficients;
  const i64 min_c = (cfg.kind == DensityKind::OmegaOverPi || cfg.kind == DensityKind::NZeroDensity) ? 3 : 5;
  if (clo < min_c)
    throw UsageError("--c: range must start at >= " + std::to_string(min_c) + " for --kind " +
                     std::string(to_string(cfg.kind)) + " (no primes in the family range)");
  const DensitySeries s =
      cfg.kind == DensityKind::OmegaOverPi
          ? density_omega_series(clo, chi, cfg.stride, cfg.mode == ModeSel::Literal ? Mode::Literal : Mode::Predicted,
                                 cfg.workers)
          : density_fixed_count(cfg.kind, clo, chi, cfg.stride, cfg.workers);
  for (const auto& r : s.rows)
    t.rows.push_back({std::string(to_string(s.kind)), std::string(to_string(s.mode)), r.c, r.numerator, r.denominator,
                      r.prime_count, r.ratio.str(), r.ratio.to_double()});
  return t;
}

inline Table run_fields(const RunConfig& cfg) {
  Table t{{"degree", "x", "coefficient_bound", "total", "with_integer_root", "without_integer_root"}, {}};
  std::vector<std::pair<i64, i64>> grid;
  for (i64 d = cfg.degrees->lo; d <= cfg.degrees->hi; ++d)
    for (i64 x = cfg.xs->lo;; ++x) {
      grid.emplace_back(d, x);
      if (x == cfg.xs->hi) break;
    }
  const auto reports =
      parallel_map(grid.size(), cfg.workers, [&](std::size_t i) { return family_count(grid[i].first, grid[i].second); });
  for (const auto& r : reports)
    t.rows.push_back({r.degree, r.x, r.coefficient_bound, r.total, r.with_integer_root, r.without_integer_root});
  return t;
}

}  // namespace detail

/// Executes the configured subcommand into one table.
inline Table execute(const RunConfig& cfg) {
  if (cfg.subcommand == "orbit") return detail::run_orbit(cfg);
  if (cfg.subcommand == "fixedpoints") return detail::run_fixedpoints(cfg);
  if (cfg.subcommand == "count") return detail::run_comparisons(cfg, cfg.mode);
  if (cfg.subcommand == "verify") return detail::run_comparisons(cfg, ModeSel::Both);
  if (cfg.subcommand == "avg") return detail::run_avg(cfg);
  if (cfg.subcommand == "density") return detail::run_density(cfg);
  if (cfg.subcommand == "fields") return detail::run_fields(cfg);
  throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
}

inline void emit(const RunConfig& cfg, const Table& table, std::ostream& os) {
  if (cfg.format == Format::Json) write_json(os, table);
  else write_csv(os, table);
}

/// Full CLI entry: parse, execute, write. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               std::optional<std::string> env_jobs = std::nullopt) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv, std::move(env_jobs));
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "padfix: " << e.what() << '\n';
    return 2;
  }
  try {
    const Table table = execute(cfg);
    if (cfg.out_path.empty()) {
      emit(cfg, table, out);
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file " + cfg.out_path);
      emit(cfg, table, f);
      if (!f) throw std::runtime_error("write failed: " + cfg.out_path);
    }
    return 0;
  } catch (const UsageError& e) {
    err << "padfix: " << e.what() << '\n';
    return 2;
  } catch (const RangeError& e) {
    err << "padfix: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "padfix: internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace padfix::cli
