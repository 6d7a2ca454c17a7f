#pragma once

// Exact 64-bit integer and modular arithmetic: primality, sieving,
// factorization and the arithmetic functions omega, Omega and tau.

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace padfix {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Raised when an argument lies outside the domain an operation accepts.
class RangeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Floored modulus: the result lies in [0, m-1] for every signed a.
constexpr u64 floor_mod(i64 a, u64 m) {
  const i128 r = static_cast<i128>(a) % static_cast<i128>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i128>(m) : r);
}

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) + b) % m);
}

/// base^exp mod m with widening products; base may be negative.
constexpr u64 mod_pow(i64 base, u64 exp, u64 m) {
  if (m < 2) throw RangeError("mod_pow: modulus must be >= 2");
  u64 b = floor_mod(base, m);
  u64 result = 1 % m;
  while (exp > 0) {
    if (exp & 1u) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return result;
}

namespace detail {

// Strong probable-prime test to base a; n odd, n > a.
constexpr bool sprp(u64 n, u64 a) {
  const u64 n1 = n - 1;
  const int s = std::countr_zero(n1);
  const u64 d = n1 >> s;
  u64 x = mod_pow(static_cast<i64>(a % n), d, n);
  if (x == 1 || x == n1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

/// Deterministic for every 64-bit n (first twelve prime bases).
constexpr bool is_prime(u64 n) {
  constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  for (u64 a : small)
    if (!detail::sprp(n, a)) return false;
  return true;
}

/// A modulus certified prime at construction.
class PrimeModulus {
public:
  explicit PrimeModulus(i64 p) : p_(static_cast<u64>(p)) {
    if (p < 2 || !is_prime(static_cast<u64>(p)))
      throw RangeError("not a prime modulus: " + std::to_string(p));
  }
  constexpr u64 value() const { return p_; }
  constexpr i64 signed_value() const { return static_cast<i64>(p_); }
  friend constexpr auto operator<=>(const PrimeModulus&, const PrimeModulus&) = default;

private:
  u64 p_;
};

/// Sieve of Eratosthenes over [0, limit]; flags[n] is true iff n is prime.
inline std::vector<bool> prime_flags(u64 limit) {
  std::vector<bool> flags(limit + 1, true);
  flags[0] = false;
  if (limit >= 1) flags[1] = false;
  for (u64 i = 2; i * i <= limit; ++i)
    if (flags[i])
      for (u64 j = i * i; j <= limit; j += i) flags[j] = false;
  return flags;
}

/// Ascending primes in the closed interval [lo, hi] (segmented over the
/// base primes up to sqrt(hi)).
inline std::vector<i64> primes_in(i64 lo, i64 hi) {
  if (lo > hi) throw RangeError("primes_in: lo > hi");
  std::vector<i64> out;
  if (hi < 2) return out;
  lo = std::max<i64>(lo, 2);
  const u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(hi))) + 1;
  const auto base = prime_flags(root);
  std::vector<bool> seg(static_cast<std::size_t>(hi - lo + 1), true);
  for (u64 q = 2; q <= root; ++q) {
    if (!base[q]) continue;
    const u64 uq = q;
    u64 start = std::max<u64>(uq * uq, (static_cast<u64>(lo) + uq - 1) / uq * uq);
    for (u64 j = start; j <= static_cast<u64>(hi); j += uq)
      seg[j - static_cast<u64>(lo)] = false;
  }
  for (i64 n = lo; n <= hi; ++n)
    if (seg[static_cast<std::size_t>(n - lo)]) out.push_back(n);
  return out;
}

/// #{p prime : 3 <= p <= x}.
inline i64 prime_count_odd(i64 x) {
  if (x < 3) return 0;
  return static_cast<i64>(primes_in(3, x).size());
}

/// Prefix table answering prime_count_odd(x) for every x in [0, limit].
class OddPrimeCounter {
public:
  explicit OddPrimeCounter(i64 limit) : counts_(static_cast<std::size_t>(std::max<i64>(limit, 0) + 1), 0) {
    const auto flags = prime_flags(static_cast<u64>(std::max<i64>(limit, 0)));
    i64 running = 0;
    for (std::size_t n = 0; n < counts_.size(); ++n) {
      if (n >= 3 && flags[n]) ++running;
      counts_[n] = static_cast<std::int32_t>(running);
    }
  }
  i64 limit() const { return static_cast<i64>(counts_.size()) - 1; }
  i64 operator()(i64 x) const {
    if (x < 3) return 0;
    if (x > limit()) throw RangeError("OddPrimeCounter: query beyond table");
    return counts_[static_cast<std::size_t>(x)];
  }

private:
  std::vector<std::int32_t> counts_;
};

struct PrimePower {
  u64 prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization: primes strictly ascending, exponents >= 1.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  u64 product() const {
    u64 acc = 1;
    for (const auto& f : factors)
      for (unsigned e = 0; e < f.exponent; ++e) acc *= f.prime;
    return acc;
  }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

inline u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return add_mod(mul_mod(x, x, n), c, n); };
    u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
    constexpr u64 batch = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += batch) {
        ys = y;
        for (u64 i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

}  // namespace detail

inline constexpr u64 kTrialDivisionLimit = 1'000'000;

/// Trial division by candidates below 10^6, Pollard-Brent on any
/// composite cofactor left over.
inline Factorization factorize(u64 n) {
  if (n == 0) throw RangeError("factorize: n must be >= 1");
  Factorization out;
  out.n = n;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.factors.push_back({p, e});
  };
  take(2);
  take(3);
  for (u64 d = 5; d < kTrialDivisionLimit && d * d <= n; d += 6) {
    take(d);
    take(d + 2);
  }
  if (n > 1) {
    std::vector<u64> rest;
    detail::split_into(n, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      out.factors.push_back({rest[i], static_cast<unsigned>(j - i)});
      i = j;
    }
  }
  return out;
}

inline unsigned omega(const Factorization& f) { return static_cast<unsigned>(f.factors.size()); }

inline unsigned big_omega(const Factorization& f) {
  unsigned s = 0;
  for (const auto& pp : f.factors) s += pp.exponent;
  return s;
}

inline u64 tau(const Factorization& f) {
  u64 t = 1;
  for (const auto& pp : f.factors) t *= pp.exponent + 1;
  return t;
}

/// Distinct odd prime divisors.
inline unsigned omega_odd(const Factorization& f) {
  unsigned w = omega(f);
  return (!f.factors.empty() && f.factors.front().prime == 2) ? w - 1 : w;
}

inline unsigned omega(u64 n) { return omega(factorize(n)); }
inline unsigned big_omega(u64 n) { return big_omega(factorize(n)); }
inline u64 tau(u64 n) { return tau(factorize(n)); }
inline unsigned omega_odd(u64 n) { return omega_odd(factorize(n)); }

/// All positive divisors in ascending order.
inline std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> ds{1};
  for (const auto& pp : f.factors) {
    const std::size_t base = ds.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

/// Nonnegative exact ratio of 64-bit integers, always in lowest terms.
class Fraction {
public:
  Fraction() = default;
  Fraction(i64 num, i64 den) {
    if (den == 0) throw RangeError("Fraction: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i64 g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }
  i64 num() const { return num_; }
  i64 den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
  }

private:
  i64 num_ = 0;
  i64 den_ = 1;
};

}  // namespace padfix
