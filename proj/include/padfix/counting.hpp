#pragma once

// Literal fixed-point counts of z -> z^p + c and z -> z^{p-1} + c modulo
// p, closed-form predictions for them, and the reconciliation of the two.

#include <optional>
#include <string>
#include <string_view>

#include "padfix/arith.hpp"
#include "padfix/dynamics.hpp"

namespace padfix {

/// DegreeP is z^p + c (prime p >= 3); DegreePMinus1 is z^{p-1} + c (p >= 5).
enum class Family { DegreeP, DegreePMinus1 };

enum class Verdict { Match, Mismatch, NotCovered };

inline std::string_view to_string(Family f) { return f == Family::DegreeP ? "p" : "p-1"; }

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "Match";
    case Verdict::Mismatch: return "Mismatch";
    case Verdict::NotCovered: return "NotCovered";
  }
  return "?";
}

inline i64 family_min_prime(Family f) { return f == Family::DegreeP ? 3 : 5; }

inline i64 family_degree(Family f, const PrimeModulus& p) {
  return f == Family::DegreeP ? p.signed_value() : p.signed_value() - 1;
}

inline void require_family_prime(Family f, const PrimeModulus& p) {
  if (p.signed_value() < family_min_prime(f))
    throw RangeError("prime " + std::to_string(p.value()) + " below family minimum " +
                     std::to_string(family_min_prime(f)) + " for degree " + std::string(to_string(f)));
}

struct PredictionRecord {
  Family family = Family::DegreeP;
  u64 residue_class = 0;
  std::optional<unsigned> predicted;  ///< empty when the closed form is silent
  std::string theorem_tag;

  bool covered() const { return predicted.has_value(); }
};

struct ComparisonRecord {
  PrimeModulus p;
  i64 c = 0;
  Family family = Family::DegreeP;
  u64 literal = 0;
  PredictionRecord prediction;
  Verdict verdict = Verdict::NotCovered;
};

/// #{z in Z/pZ : z^p - z + c = 0 mod p}, by exhaustive scan.
inline u64 count_N_literal(i64 c, const PrimeModulus& p) {
  require_family_prime(Family::DegreeP, p);
  return fixed_points_mod(MapSpec(p.signed_value(), c), p).literal_count;
}

/// #{z in Z/pZ : z^{p-1} - z + c = 0 mod p}, by exhaustive scan.
inline u64 count_M_literal(i64 c, const PrimeModulus& p) {
  require_family_prime(Family::DegreePMinus1, p);
  return fixed_points_mod(MapSpec(p.signed_value() - 1, c), p).literal_count;
}

inline u64 count_literal(Family f, i64 c, const PrimeModulus& p) {
  return f == Family::DegreeP ? count_N_literal(c, p) : count_M_literal(c, p);
}

/// 3 when p | c, otherwise 0.
inline PredictionRecord predict_N(i64 c, const PrimeModulus& p) {
  require_family_prime(Family::DegreeP, p);
  PredictionRecord r;
  r.family = Family::DegreeP;
  r.residue_class = floor_mod(c, p.value());
  r.predicted = r.residue_class == 0 ? 3u : 0u;
  r.theorem_tag = p.value() == 3 ? "cubic-mod-3" : "three-or-zero";
  return r;
}

/// Residue 0 -> 2, residue 1 -> 1, residue p-1 -> 0; silent elsewhere.
/// With `extended`, every other residue gets 1, which follows from
/// z^{p-1} = 1 on the nonzero residues (tagged "derived-extension").
inline PredictionRecord predict_M(i64 c, const PrimeModulus& p, bool extended = false) {
  require_family_prime(Family::DegreePMinus1, p);
  PredictionRecord r;
  r.family = Family::DegreePMinus1;
  r.residue_class = floor_mod(c, p.value());
  r.theorem_tag = p.value() == 5 ? "quartic-mod-5" : "residue-rule";
  if (r.residue_class == 0) {
    r.predicted = 2u;
  } else if (r.residue_class == 1) {
    r.predicted = 1u;
  } else if (r.residue_class == p.value() - 1) {
    r.predicted = 0u;
  } else if (extended) {
    r.predicted = 1u;
    r.theorem_tag = "derived-extension";
  } else {
    r.theorem_tag = "none";
  }
  return r;
}

inline PredictionRecord predict(Family f, i64 c, const PrimeModulus& p, bool extended = false) {
  return f == Family::DegreeP ? predict_N(c, p) : predict_M(c, p, extended);
}

/// Pairs the literal count with the prediction. A disagreement is
/// reported as Mismatch, never thrown.
inline ComparisonRecord verify(i64 c, const PrimeModulus& p, Family f, bool extended = false) {
  ComparisonRecord rec{p, c, f, count_literal(f, c, p), predict(f, c, p, extended), Verdict::NotCovered};
  if (rec.prediction.covered())
    rec.verdict = rec.literal == *rec.prediction.predicted ? Verdict::Match : Verdict::Mismatch;
  return rec;
}

}  // namespace padfix
