#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"
#include "padfix/dynamics.hpp"

using namespace padfix;

TEST(MapSpec, RejectsDegreeBelowTwo) {
  EXPECT_THROW(MapSpec(1, 0), RangeError);
  EXPECT_THROW(RationalMapSpec(0, RationalPoint(1)), RangeError);
}

TEST(EvalMod, Examples) {
  EXPECT_EQ(eval_mod(MapSpec(3, 3), 2, PrimeModulus(3)), 2u);
  EXPECT_EQ(eval_mod(MapSpec(4, 0), 1, PrimeModulus(5)), 1u);
  EXPECT_EQ(eval_mod(MapSpec(5, -1), 0, PrimeModulus(5)), 4u);
  EXPECT_THROW(eval_mod(MapSpec(2, 0), 5, PrimeModulus(5)), RangeError);
}

TEST(FixedPointsMod, Examples) {
  auto res = [](i64 d, i64 c, i64 p) { return fixed_points_mod(MapSpec(d, c), PrimeModulus(p)); };
  EXPECT_EQ(res(3, 0, 3).residues, (std::vector<u64>{0, 1, 2}));
  EXPECT_EQ(res(3, 0, 3).literal_count, 3u);
  EXPECT_EQ(res(4, 0, 5).residues, (std::vector<u64>{0, 1}));
  EXPECT_TRUE(res(4, 4, 5).residues.empty());
  EXPECT_EQ(res(4, 4, 5).literal_count, 0u);
  EXPECT_EQ(res(4, 2, 5).residues, (std::vector<u64>{3}));
}

TEST(FixedPointsMod, ReportInvariantsOnParameterBox) {
  for (i64 p : oracle::primes_upto(97))
    for (i64 d = 2; d <= 6; ++d)
      for (i64 c = -20; c <= 20; ++c) {
        const PrimeModulus pm(p);
        const MapSpec map(d, c);
        const auto r = fixed_points_mod(map, pm);
        ASSERT_EQ(r.literal_count, r.residues.size());
        ASSERT_EQ(r.residues, oracle::fixed_points(d, c, p));
        for (u64 z : r.residues) ASSERT_EQ(eval_mod(map, z, pm), z);
      }
}

TEST(OrbitMod, Examples) {
  auto a = orbit_mod(MapSpec(3, 0), 2, PrimeModulus(3));
  EXPECT_EQ(a.preperiod, 0u);
  EXPECT_EQ(a.period, 1u);
  EXPECT_EQ(a.cycle, (std::vector<u64>{2}));

  // 0 -> 1 -> 2 -> 5 = 0: purely periodic of period 3.
  auto b = orbit_mod(MapSpec(2, 1), 0, PrimeModulus(5));
  EXPECT_EQ(b.preperiod, 0u);
  EXPECT_EQ(b.period, 3u);
  EXPECT_TRUE(b.tail.empty());
  EXPECT_EQ(b.cycle, (std::vector<u64>{0, 1, 2}));

  auto c = orbit_mod(MapSpec(4, 0), 2, PrimeModulus(5));
  EXPECT_EQ(c.preperiod, 1u);
  EXPECT_EQ(c.period, 1u);
  EXPECT_EQ(c.tail, (std::vector<u64>{2}));
  EXPECT_EQ(c.cycle, (std::vector<u64>{1}));

  EXPECT_THROW(orbit_mod(MapSpec(2, 0), 7, PrimeModulus(7)), RangeError);
}

namespace {

std::pair<std::size_t, std::size_t> brent_mod(i64 d, i64 c, i64 p, i64 z0) {
  std::function<i64(const i64&)> f = [=](const i64& z) { return oracle::eval(d, c, z, p); };
  return oracle::brent<i64>(f, z0);
}

}  // namespace

TEST(OrbitMod, MinimalityAgainstPointerChasingOracle) {
  for (i64 p : oracle::primes_upto(97))
    for (i64 d = 2; d <= 6; ++d)
      for (i64 c = -20; c <= 20; ++c) {
        const MapSpec map(d, c);
        const PrimeModulus pm(p);
        for (i64 z0 = 0; z0 < p; ++z0) {
          const auto rec = orbit_mod(map, static_cast<u64>(z0), pm);
          const auto [mu, lam] = brent_mod(d, c, p, z0);
          ASSERT_EQ(rec.status, OrbitStatus::Resolved);
          ASSERT_EQ(rec.preperiod, mu);
          ASSERT_EQ(rec.period, lam);
          ASSERT_EQ(rec.tail.size(), mu);
          ASSERT_EQ(rec.cycle.size(), lam);
          ASSERT_EQ(eval_mod(map, rec.cycle.back(), pm), rec.cycle.front());
        }
      }
}

TEST(OrbitMod, FixedPointsAreTheOneCycleStarts) {
  for (i64 p : oracle::primes_upto(97))
    for (i64 d = 2; d <= 6; ++d)
      for (i64 c = -20; c <= 20; ++c) {
        const MapSpec map(d, c);
        const PrimeModulus pm(p);
        std::vector<u64> from_orbits;
        for (u64 z = 0; z < pm.value(); ++z) {
          const auto rec = orbit_mod(map, z, pm);
          if (rec.preperiod == 0 && rec.period == 1) from_orbits.push_back(z);
        }
        ASSERT_EQ(from_orbits, fixed_points_mod(map, pm).residues);
      }
}

TEST(OrbitRational, PeriodTwoExample) {
  const RationalMapSpec map(2, RationalPoint(-21, 16));
  const auto rec = orbit_rational(map, RationalPoint(1, 4));
  EXPECT_EQ(rec.status, OrbitStatus::Resolved);
  EXPECT_EQ(rec.preperiod, 0u);
  EXPECT_EQ(rec.period, 2u);
  EXPECT_EQ(rec.cycle, (std::vector<RationalPoint>{RationalPoint(1, 4), RationalPoint(-5, 4)}));
}

TEST(OrbitRational, PreperiodicExample) {
  const RationalMapSpec map(2, RationalPoint::parse("-29/16"));
  const auto rec = orbit_rational(map, RationalPoint::parse("3/4"));
  EXPECT_EQ(rec.status, OrbitStatus::Resolved);
  EXPECT_EQ(rec.preperiod, 2u);
  EXPECT_EQ(rec.period, 3u);
  EXPECT_EQ(rec.tail, (std::vector<RationalPoint>{RationalPoint(3, 4), RationalPoint(-5, 4)}));
  EXPECT_EQ(rec.cycle,
            (std::vector<RationalPoint>{RationalPoint(-1, 4), RationalPoint(-7, 4), RationalPoint(5, 4)}));
}

TEST(OrbitRational, DivergentIntegerOrbit) {
  const auto rec = orbit_rational(RationalMapSpec(2, RationalPoint(1)), RationalPoint(1));
  EXPECT_EQ(rec.status, OrbitStatus::Divergent);
  EXPECT_EQ(rec.period, 0u);
  ASSERT_GE(rec.tail.size(), 4u);
  EXPECT_EQ(rec.tail[0], RationalPoint(1));
  EXPECT_EQ(rec.tail[1], RationalPoint(2));
  EXPECT_EQ(rec.tail[2], RationalPoint(5));
  EXPECT_EQ(rec.tail[3], RationalPoint(26));
  for (const auto& z : rec.tail) EXPECT_LE(z.height_bits(), kDefaultCutoffBits);

  const auto small = orbit_rational(RationalMapSpec(2, RationalPoint(1)), RationalPoint(1), 8);
  EXPECT_EQ(small.tail.size(), 4u);  // 1, 2, 5, 26; 677 needs 10 bits
}

TEST(OrbitRational, AgreesWithPointerChasingOnIntegerStarts) {
  // Integer c and z keep small finite orbits when they stay bounded.
  for (i64 c = -2; c <= 0; ++c)
    for (i64 z0 = -2; z0 <= 2; ++z0) {
      const auto rec = orbit_rational(RationalMapSpec(2, RationalPoint(c)), RationalPoint(z0));
      if (rec.status != OrbitStatus::Resolved) continue;
      std::function<RationalPoint(const RationalPoint&)> f = [c](const RationalPoint& z) {
        return z * z + RationalPoint(c);
      };
      const auto [mu, lam] = oracle::brent<RationalPoint>(f, RationalPoint(z0));
      EXPECT_EQ(rec.preperiod, mu);
      EXPECT_EQ(rec.period, lam);
    }
}

TEST(RationalPoint, ParseAndNormalize) {
  EXPECT_EQ(RationalPoint::parse("6/-8").str(), "-3/4");
  EXPECT_EQ(RationalPoint::parse("-21/16").str(), "-21/16");
  EXPECT_EQ(RationalPoint::parse("4/2").str(), "2");
  EXPECT_EQ(RationalPoint::parse("0/5").str(), "0");
  EXPECT_THROW(RationalPoint::parse("1/0"), RangeError);
  EXPECT_THROW(RationalPoint::parse("abc"), RangeError);
  EXPECT_THROW(RationalPoint::parse(""), RangeError);
}

TEST(IntegerFixedPoints, Examples) {
  EXPECT_EQ(integer_fixed_points(MapSpec(3, 0)), (std::vector<i64>{-1, 0, 1}));
  EXPECT_EQ(integer_fixed_points(MapSpec(4, 0)), (std::vector<i64>{0, 1}));
  EXPECT_TRUE(integer_fixed_points(MapSpec(3, 3)).empty());
  EXPECT_EQ(integer_fixed_points(MapSpec(2, -6)), (std::vector<i64>{-2, 3}));
  EXPECT_EQ(integer_fixed_points(MapSpec(3, 6)), (std::vector<i64>{-2}));
}

TEST(IntegerFixedPoints, AgreeWithOracleAndReduceIntoModularFixedPoints) {
  for (i64 d = 2; d <= 6; ++d)
    for (i64 c = -200; c <= 200; ++c) {
      const MapSpec map(d, c);
      const auto roots = integer_fixed_points(map);
      ASSERT_EQ(!roots.empty(), oracle::has_integer_root(d, c)) << d << " " << c;
      if (std::abs(c) > 20) continue;
      for (i64 p : oracle::primes_upto(97)) {
        const auto fixed = fixed_points_mod(map, PrimeModulus(p)).residues;
        for (i64 z : roots)
          ASSERT_TRUE(std::binary_search(fixed.begin(), fixed.end(), static_cast<u64>(oracle::mod(z, p))))
              << "d=" << d << " c=" << c << " p=" << p << " z=" << z;
      }
    }
}

TEST(IntegerFixedPoints, HugeDegreeDoesNotOverflow) {
  EXPECT_TRUE(integer_fixed_points(MapSpec(997, 12)).empty());
  EXPECT_EQ(integer_fixed_points(MapSpec(63, 0)), (std::vector<i64>{-1, 0, 1}));
  // z = 2: 2^62 - 2 + c = 0; z = -2 gives 2^62 + 2 + c = 4.
  const i64 c = 2 - (i64{1} << 62);
  EXPECT_EQ(integer_fixed_points(MapSpec(62, c)), (std::vector<i64>{2}));
}
