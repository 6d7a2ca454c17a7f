#pragma once

// Finite-range averages and densities of the fixed-point counts, the
// omega/tau/pi machinery behind them, and height-ordered family counts.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "padfix/arith.hpp"
#include "padfix/counting.hpp"
#include "padfix/parallel.hpp"
#include "padfix/rational.hpp"

namespace padfix {

/// Which coefficients c = p*t + offset are sampled for each prime p.
enum class Filter { DividesC, DividesCMinus1, DividesCPlus1, NotDividesC };

enum class Mode { Literal, Predicted };

enum class DensityKind { OmegaOverPi, MDensity2, MDensity1, NZeroDensity, MZeroDensity };

inline std::string_view to_string(Filter f) {
  switch (f) {
    case Filter::DividesC: return "divides-c";
    case Filter::DividesCMinus1: return "divides-c-minus-1";
    case Filter::DividesCPlus1: return "divides-c-plus-1";
    case Filter::NotDividesC: return "not-divides-c";
  }
  return "?";
}

inline std::string_view to_string(Mode m) { return m == Mode::Literal ? "literal" : "predicted"; }

inline std::string_view to_string(DensityKind k) {
  switch (k) {
    case DensityKind::OmegaOverPi: return "omega";
    case DensityKind::MDensity2: return "m2";
    case DensityKind::MDensity1: return "m1";
    case DensityKind::NZeroDensity: return "n0";
    case DensityKind::MZeroDensity: return "m0";
  }
  return "?";
}

/// Offset r in c = p*t + r. NotDividesC uses r = 2, which no prime >= 3
/// divides.
inline i64 filter_offset(Filter f) {
  switch (f) {
    case Filter::DividesC: return 0;
    case Filter::DividesCMinus1: return 1;
    case Filter::DividesCPlus1: return -1;
    case Filter::NotDividesC: return 2;
  }
  return 0;
}

struct AverageReport {
  Family family = Family::DegreeP;
  Filter filter = Filter::DividesC;
  Mode mode = Mode::Literal;
  i64 prime_lo = 0;
  i64 prime_hi = 0;
  i64 t_range = 0;
  i64 sample_count = 0;
  i64 sum = 0;
  Fraction mean;
};

inline AverageReport average(Family family, Filter filter, Mode mode, i64 prime_lo, i64 prime_hi, i64 t_range,
                             unsigned workers = 1) {
  if (t_range < 1) throw RangeError("average: t_range must be >= 1");
  if (prime_lo > prime_hi) throw RangeError("average: empty prime range");
  if (prime_lo < family_min_prime(family))
    throw RangeError("average: prime range must start at >= " + std::to_string(family_min_prime(family)));
  const auto primes = primes_in(prime_lo, prime_hi);
  if (primes.empty()) throw RangeError("average: no primes in range, mean undefined");

  const i64 offset = filter_offset(filter);
  const auto per_prime = parallel_map(primes.size(), workers, [&](std::size_t i) {
    const PrimeModulus p(primes[i]);
    i64 sum = 0;
    for (i64 t = 1; t <= t_range; ++t) {
      const i64 c = p.signed_value() * t + offset;
      if (mode == Mode::Literal) {
        sum += static_cast<i64>(count_literal(family, c, p));
      } else {
        const auto pred = predict(family, c, p);
        if (!pred.covered())
          throw RangeError("average: no closed-form prediction for c mod p = " + std::to_string(pred.residue_class));
        sum += *pred.predicted;
      }
    }
    return sum;
  });

  AverageReport r{family, filter, mode, prime_lo, prime_hi, t_range, 0, 0, {}};
  for (i64 s : per_prime) r.sum += s;
  r.sample_count = static_cast<i64>(primes.size()) * t_range;
  r.mean = Fraction(r.sum, r.sample_count);
  return r;
}

struct DensityRow {
  i64 c = 0;
  i64 numerator = 0;
  i64 denominator = 0;
  i64 prime_count = 0;  ///< pi(c), including p = 2
  Fraction ratio;
};

struct DensitySeries {
  DensityKind kind = DensityKind::OmegaOverPi;
  Mode mode = Mode::Predicted;
  std::vector<DensityRow> rows;
};

namespace detail {

inline std::vector<i64> strided(i64 lo, i64 hi, i64 stride) {
  if (stride < 1) throw RangeError("stride must be >= 1");
  if (lo > hi) throw RangeError("empty coefficient range");
  std::vector<i64> cs;
  for (i64 c = lo; c <= hi; c += stride) cs.push_back(c);
  return cs;
}

}  // namespace detail

/// Rows (c, omega_odd(c), prime_count_odd(c)). In Literal mode the
/// numerator instead counts odd primes p <= c with a literal count of
/// exactly three fixed points of z^p + c.
inline DensitySeries density_omega_series(i64 c_lo, i64 c_hi, i64 stride, Mode mode = Mode::Predicted,
                                          unsigned workers = 1) {
  if (c_lo < 3) throw RangeError("density: c range must start at >= 3");
  const auto cs = detail::strided(c_lo, c_hi, stride);
  const OddPrimeCounter pi_odd(c_hi);
  const auto odd_primes = mode == Mode::Literal ? primes_in(3, c_hi) : std::vector<i64>{};

  DensitySeries series{DensityKind::OmegaOverPi, mode, {}};
  series.rows = parallel_map(cs.size(), workers, [&](std::size_t i) {
    const i64 c = cs[i];
    DensityRow row;
    row.c = c;
    row.denominator = pi_odd(c);
    row.prime_count = row.denominator + 1;
    if (mode == Mode::Predicted) {
      row.numerator = omega_odd(static_cast<u64>(c));
    } else {
      for (i64 p : odd_primes) {
        if (p > c) break;
        if (count_N_literal(c, PrimeModulus(p)) == 3) ++row.numerator;
      }
    }
    row.ratio = Fraction(row.numerator, row.denominator);
    return row;
  });
  return series;
}

/// For each c: the share of primes p in [family minimum, c] whose literal
/// fixed-point count meets the kind's condition.
inline DensitySeries density_fixed_count(DensityKind kind, i64 c_lo, i64 c_hi, i64 stride, unsigned workers = 1) {
  if (kind == DensityKind::OmegaOverPi) return density_omega_series(c_lo, c_hi, stride, Mode::Predicted, workers);
  const Family family =
      (kind == DensityKind::NZeroDensity) ? Family::DegreeP : Family::DegreePMinus1;
  const u64 wanted = kind == DensityKind::MDensity2 ? 2 : kind == DensityKind::MDensity1 ? 1 : 0;
  const i64 pmin = family_min_prime(family);
  const auto cs = detail::strided(c_lo, c_hi, stride);
  if (c_lo < pmin)
    throw RangeError("density " + std::string(to_string(kind)) + ": no primes in [" + std::to_string(pmin) + ", " +
                     std::to_string(c_lo) + "]");
  const auto primes = primes_in(pmin, c_hi);
  const OddPrimeCounter pi_odd(c_hi);

  DensitySeries series{kind, Mode::Literal, {}};
  series.rows = parallel_map(cs.size(), workers, [&](std::size_t i) {
    const i64 c = cs[i];
    DensityRow row;
    row.c = c;
    row.prime_count = pi_odd(c) + 1;
    for (i64 p : primes) {
      if (p > c) break;
      ++row.denominator;
      if (count_literal(family, c, PrimeModulus(p)) == wanted) ++row.numerator;
    }
    row.ratio = Fraction(row.numerator, row.denominator);
    return row;
  });
  return series;
}

/// 2^omega(c) <= tau(c), compared exactly.
inline bool density_bound_check(u64 c) {
  const auto f = factorize(c);
  return (u64{1} << omega(f)) <= tau(f);
}

/// |c|^{1/degree}; exact when |c| is a perfect power.
inline double height(i64 degree, i64 c) {
  if (degree < 2) throw RangeError("height: degree must be >= 2");
  if (c == 0) return 0.0;
  const long double mag = std::fabs(static_cast<long double>(c));
  const long double root = std::pow(mag, 1.0L / static_cast<long double>(degree));
  const long double r = std::round(root);
  if (r >= 1 && r < 4294967296.0L) {
    BigInt acc = boost::multiprecision::pow(BigInt(static_cast<u64>(r)), static_cast<unsigned>(degree));
    const BigInt target = c < 0 ? -BigInt(c) : BigInt(c);
    if (acc == target) return static_cast<double>(r);
  }
  return static_cast<double>(root);
}

struct FamilyCountReport {
  i64 degree = 0;
  i64 x = 0;
  i64 coefficient_bound = 0;
  i64 total = 0;
  i64 with_integer_root = 0;
  i64 without_integer_root = 0;
};

/// Largest B >= 0 with B^{2d-2} <= X^d, i.e. floor(X^{d/(2d-2)}).
inline i64 coefficient_bound(i64 degree, i64 x) {
  if (degree < 2) throw RangeError("coefficient_bound: degree must be >= 2");
  if (x < 1) throw RangeError("coefficient_bound: X must be >= 1");
  const auto d = static_cast<unsigned>(degree);
  const BigInt rhs = boost::multiprecision::pow(BigInt(x), d);
  auto fits = [&](i64 b) { return boost::multiprecision::pow(BigInt(b), 2 * d - 2) <= rhs; };
  const long double est = std::pow(static_cast<long double>(x),
                                   static_cast<long double>(degree) / static_cast<long double>(2 * degree - 2));
  i64 b = static_cast<i64>(std::floor(est));
  while (b > 0 && !fits(b)) --b;
  while (fits(b + 1)) ++b;
  return b;
}

/// Counts c in [1, bound] for which x^degree - x + c has an integer
/// root. Roots z give c = z - z^degree, so the hits are marked by
/// sweeping z outward instead of testing every c.
inline FamilyCountReport family_count(i64 degree, i64 x) {
  FamilyCountReport r;
  r.degree = degree;
  r.x = x;
  r.coefficient_bound = coefficient_bound(degree, x);
  r.total = r.coefficient_bound;
  std::vector<bool> hit(static_cast<std::size_t>(r.coefficient_bound) + 1, false);
  // |z|^degree - |z| grows without bound in |z|; stop once it exceeds the bound.
  for (int sign : {1, -1}) {
    for (i64 m = 0;; ++m) {
      const i64 z = sign * m;
      i128 power = 1;
      bool over = false;
      for (i64 k = 0; k < degree; ++k) {
        power *= m;
        if (power > static_cast<i128>(r.coefficient_bound) + m) {
          over = true;
          break;
        }
      }
      if (over) break;
      const i128 zd = (sign < 0 && degree % 2 == 1) ? -power : power;
      const i128 c = static_cast<i128>(z) - zd;
      if (c >= 1 && c <= r.coefficient_bound) hit[static_cast<std::size_t>(c)] = true;
    }
  }
  for (i64 c = 1; c <= r.coefficient_bound; ++c)
    if (hit[static_cast<std::size_t>(c)]) ++r.with_integer_root;
  r.without_integer_root = r.total - r.with_integer_root;
  return r;
}

}  // namespace padfix
