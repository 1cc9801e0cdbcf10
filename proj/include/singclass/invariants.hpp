#pragma once

// Numerical invariants of plane curve germs given by parametrizations:
// value semigroup, conductor and delta, intersection multiplicity, maximal
// contact, and the parametrization determinacy bound.

#include <map>
#include <string>
#include <vector>

#include "singclass/parametrization.hpp"

namespace singclass {

/// Echelon basis of the image of K[[x,y]] in K[t]/(t^{N+1}) under a branch:
/// for every value gamma <= N one monic element of order gamma, with the
/// polynomial it comes from.
class RingBasis {
 public:
  struct Element {
    TruncSeries series;  // monic, order = key, truncation N
    BivarPoly expr;      // series = expr(x(t), y(t)) mod t^{N+1}
  };

  /// The branch must be known to t^N.  With track_expressions = false the
  /// expr fields stay zero (faster).
  RingBasis(const Branch& b, int N, bool track_expressions = true);

  int truncation() const { return N_; }
  const std::map<int, Element>& elements() const { return elements_; }
  bool contains(int order) const { return elements_.count(order) > 0; }
  std::vector<int> orders() const;

  /// Subtracts basis elements from s while its order is a basis order.
  /// Returns the remainder; `used` accumulates the subtracted expression.
  TruncSeries reduce(TruncSeries s, BivarPoly* used = nullptr) const;

 private:
  int N_;
  std::map<int, Element> elements_;
};

struct ValueSemigroup {
  std::vector<int> members;  // all members in [0, conductor]
  int conductor = 0;
  int delta = 0;
  std::vector<int> generators;
  int truncation_used = 0;

  bool contains(int v) const;
  std::vector<int> gaps() const;
  std::string to_string() const;
};

/// Exact semigroup of values.  NotPrimitive when every value found shares a
/// factor; TruncationTooSmall (message suggests a retry order) when the
/// branch is not known far enough to certify the conductor.
ValueSemigroup value_semigroup(const Branch& b, int n_hint = 0);

/// Polynomial equation of the branch's stored jet, via a resultant.  When
/// the polynomial curve passes through the origin more than once (or covers
/// its image several times) the jet is perturbed above `keep_through`
/// until the equation has the branch's multiplicity.
BivarPoly local_equation(const Branch& b, int keep_through);

/// Local intersection number of two branches, computed in both directions.
/// BranchesCoincide, TruncationTooSmall.
int intersection_multiplicity(const Branch& a, const Branch& b);

struct ConductorVector {
  std::vector<int> c;
  int total = 0;
  int delta = 0;  // total / 2
};

ConductorVector conductor_vector(const Parametrization& psi);

/// Supremum over regular curves gamma of min_i i(f_i, gamma), searched
/// greedily over graphs y = a(x) and x = a(y), capped at max(c_i) + 1.
int max_contact(const Parametrization& psi);

struct DeterminacyBound {
  std::vector<int> d;
  std::string tag;  // "mt1", "mt2-r1", "mt2-r2", "mtBig"
};

DeterminacyBound determinacy_bound(const Parametrization& psi);

}  // namespace singclass
