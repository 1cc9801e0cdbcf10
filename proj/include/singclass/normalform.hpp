#pragma once

// Jet-by-jet left-right reduction of a branch to normal form, equivalence of
// branches, and an exhaustive orbit search on small jets over tiny fields.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "singclass/invariants.hpp"
#include "singclass/parametrization.hpp"

namespace singclass {

struct Residual {
  int exponent;
  FieldElem coefficient;
  bool normalized;  // scaled to 1 (or zero)
};

struct ReductionResult {
  Branch normal_form;   // fixed coordinate t^e, free coordinate t^f + residual terms
  Transcript transcript;  // replays the input branch onto normal_form
  std::vector<Residual> residuals;  // nonzero coefficients that no move removes
  int truncation = 0;
  int m = 0, n = 0;
  Orientation orientation = Orientation::XNormalized;

  int fixed_order() const { return orientation == Orientation::YNormalized ? n : m; }
  int free_order() const { return orientation == Orientation::YNormalized ? m : n; }
  /// Residuals after the first are moduli: no move and no scaling removes them.
  bool has_modulus() const { return residuals.size() > 1; }
  const TruncSeries& fixed() const { return orientation == Orientation::YNormalized ? normal_form.y : normal_form.x; }
  const TruncSeries& free() const { return orientation == Orientation::YNormalized ? normal_form.x : normal_form.y; }
};

/// Normal form up to t^N (N = 0 selects conductor + 2).  The branch is moved
/// to normal position first.  Errors: BothOrdersDivisibleByP,
/// TruncationTooSmall, NotPrimitive.
ReductionResult reduce(const Branch& b, int N = 0);

struct EquivalenceResult {
  bool equivalent = false;
  std::string reason;
  /// On success: replay(first, first_moves) and replay(second, second_moves)
  /// agree to `truncation`.
  Transcript first_moves;
  Transcript second_moves;
  int truncation = 0;
};

/// Left-right equivalence over the common base field, decided at the jet
/// level max(d) + 1 (or 2 delta + 2 when larger).
EquivalenceResult are_equivalent(const Branch& a, const Branch& b);

/// Checks the certificate of a positive answer by replaying it.
bool verify_certificate(const Branch& a, const Branch& b, const EquivalenceResult& r);

/// Breadth-first closure of the k-jet orbit of a under elementary left and
/// right moves, over a prime field; true when the k-jet of b is reached.
/// OrbitBudgetExceeded past max_nodes jets.
bool brute_orbit_oracle(const Branch& a, const Branch& b, int k, std::uint64_t max_nodes = 2000000);

}  // namespace singclass
