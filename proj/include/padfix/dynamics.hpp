#pragma once

// Iteration of the unicritical maps z -> z^d + c over Z/pZ, over Q, and
// integer fixed points over Z.

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "padfix/arith.hpp"
#include "padfix/rational.hpp"

namespace padfix {

/// z -> z^degree + c with a 64-bit coefficient.
class MapSpec {
public:
  MapSpec(i64 degree, i64 c) : degree_(degree), c_(c) {
    if (degree < 2) throw RangeError("map degree must be >= 2, got " + std::to_string(degree));
  }
  i64 degree() const { return degree_; }
  i64 c() const { return c_; }
  friend bool operator==(const MapSpec&, const MapSpec&) = default;

private:
  i64 degree_;
  i64 c_;
};

/// z -> z^degree + c with an exact rational coefficient.
class RationalMapSpec {
public:
  RationalMapSpec(i64 degree, RationalPoint c) : degree_(degree), c_(std::move(c)) {
    if (degree < 2) throw RangeError("map degree must be >= 2, got " + std::to_string(degree));
  }
  i64 degree() const { return degree_; }
  const RationalPoint& c() const { return c_; }

  RationalPoint operator()(const RationalPoint& z) const {
    return pow(z, static_cast<unsigned>(degree_)) + c_;
  }

private:
  i64 degree_;
  RationalPoint c_;
};

enum class OrbitStatus { Resolved, Divergent };

/// Forward orbit of `start`: `tail` holds the m preperiodic points and
/// `cycle` the n periodic ones. A Divergent record keeps everything
/// computed before the cutoff in `tail` and has period 0.
template <class Point>
struct OrbitRecord {
  Point start;
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::vector<Point> tail;
  std::vector<Point> cycle;
  OrbitStatus status = OrbitStatus::Resolved;
};

using ModOrbit = OrbitRecord<u64>;
using RationalOrbit = OrbitRecord<RationalPoint>;

struct FixedPointReport {
  PrimeModulus p;
  MapSpec map;
  std::vector<u64> residues;
  std::size_t literal_count = 0;
};

/// (z^d + c) mod p in [0, p-1].
inline u64 eval_mod(const MapSpec& map, u64 z, const PrimeModulus& p) {
  const u64 m = p.value();
  if (z >= m) throw RangeError("eval_mod: residue out of range");
  return add_mod(mod_pow(static_cast<i64>(z), static_cast<u64>(map.degree()), m), floor_mod(map.c(), m), m);
}

inline FixedPointReport fixed_points_mod(const MapSpec& map, const PrimeModulus& p) {
  FixedPointReport report{p, map, {}, 0};
  for (u64 z = 0; z < p.value(); ++z)
    if (eval_mod(map, z, p) == z) report.residues.push_back(z);
  report.literal_count = report.residues.size();
  return report;
}

namespace detail {

// Splits a trace whose last element first repeats the element at index
// `first_seen` into tail and cycle.
template <class Point>
void close_orbit(OrbitRecord<Point>& rec, std::vector<Point>& trace, std::size_t first_seen) {
  rec.status = OrbitStatus::Resolved;
  trace.pop_back();
  rec.preperiod = first_seen;
  rec.period = trace.size() - first_seen;
  rec.tail.assign(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(first_seen));
  rec.cycle.assign(trace.begin() + static_cast<std::ptrdiff_t>(first_seen), trace.end());
}

}  // namespace detail

/// Visited-map cycle detection; the first repeated point fixes the
/// minimal preperiod and period.
inline ModOrbit orbit_mod(const MapSpec& map, u64 z0, const PrimeModulus& p) {
  if (z0 >= p.value()) throw RangeError("orbit_mod: start residue out of range");
  ModOrbit rec;
  rec.start = z0;
  std::unordered_map<u64, std::size_t> seen;
  std::vector<u64> trace;
  u64 z = z0;
  for (;;) {
    const auto [it, fresh] = seen.try_emplace(z, trace.size());
    trace.push_back(z);
    if (!fresh) {
      detail::close_orbit(rec, trace, it->second);
      return rec;
    }
    z = eval_mod(map, z, p);
  }
}

inline constexpr std::size_t kDefaultCutoffBits = 512;

/// Exact iteration over Q. Divergent once an iterate's numerator or
/// denominator needs more than `cutoff_bits` bits.
inline RationalOrbit orbit_rational(const RationalMapSpec& map, const RationalPoint& z0,
                                    std::size_t cutoff_bits = kDefaultCutoffBits) {
  if (cutoff_bits == 0) throw RangeError("orbit_rational: cutoff must be positive");
  RationalOrbit rec;
  rec.start = z0;
  std::map<RationalPoint, std::size_t> seen;
  std::vector<RationalPoint> trace;
  RationalPoint z = z0;
  for (;;) {
    if (z.height_bits() > cutoff_bits) {
      rec.status = OrbitStatus::Divergent;
      rec.preperiod = 0;
      rec.period = 0;
      rec.tail = std::move(trace);
      return rec;
    }
    const auto [it, fresh] = seen.try_emplace(z, trace.size());
    trace.push_back(z);
    if (!fresh) {
      detail::close_orbit(rec, trace, it->second);
      return rec;
    }
    z = map(z);
  }
}

namespace detail {

// Exact sign test of z^d - z + c = 0 without overflow: |z|^d is built up
// with saturation against the largest magnitude that could still balance.
inline bool is_integer_root(i64 d, i64 z, i64 c) {
  const i128 target = static_cast<i128>(z) - c;  // need z^d == z - c
  if (z == 0) return target == 0;
  const bool negative = z < 0 && (d % 2 == 1);
  if ((target < 0) != negative) return false;
  const i128 mag = target < 0 ? -target : target;
  const i128 base = z < 0 ? -static_cast<i128>(z) : z;
  i128 acc = 1;
  for (i64 k = 0; k < d; ++k) {
    acc *= base;
    if (acc > mag) return false;
  }
  return acc == mag;
}

}  // namespace detail

/// Integer solutions of z^d - z + c = 0, ascending. For c != 0 every
/// root divides c.
inline std::vector<i64> integer_fixed_points(const MapSpec& map) {
  const i64 d = map.degree(), c = map.c();
  std::vector<i64> roots;
  if (c == 0) {
    // z (z^{d-1} - 1) = 0
    if (d % 2 == 1) roots.push_back(-1);
    roots.push_back(0);
    roots.push_back(1);
    return roots;
  }
  const u64 mag = c < 0 ? static_cast<u64>(-(c + 1)) + 1 : static_cast<u64>(c);
  for (u64 q : divisors(factorize(mag))) {
    if (q > static_cast<u64>(INT64_MAX)) continue;
    const i64 v = static_cast<i64>(q);
    if (detail::is_integer_root(d, -v, c)) roots.push_back(-v);
    if (detail::is_integer_root(d, v, c)) roots.push_back(v);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace padfix
