#pragma once

// Parametrized plane curve germs, their jets, the left-right group action and
// normal position of a branch.

#include <optional>
#include <string>
#include <vector>

#include "singclass/bivar.hpp"
#include "singclass/series.hpp"

namespace singclass {

struct Branch {
  TruncSeries x;
  TruncSeries y;

  const Field& field() const { return x.field(); }
  /// Certified truncation: min of the coordinate truncations.
  int prec() const { return std::min(x.prec(), y.prec()); }
  int multiplicity() const { return std::min(x.order_bound(), y.order_bound()); }
  std::string to_string() const;
};

class Parametrization {
 public:
  /// Each branch must map into the maximal ideal (NotInMaximalIdeal) and be
  /// nonconstant to its truncation (TruncationTooSmall).
  Parametrization(const Field& f, std::vector<Branch> branches);
  explicit Parametrization(Branch b) : Parametrization(b.field(), {std::move(b)}) {}

  const Field& field() const { return *field_; }
  const std::vector<Branch>& branches() const { return branches_; }
  const Branch& branch(size_t i) const { return branches_.at(i); }
  size_t size() const { return branches_.size(); }
  std::vector<int> truncation() const;
  std::string to_string() const;

 private:
  const Field* field_;
  std::vector<Branch> branches_;
};

/// t -> phi_i(t) on branch i; every phi_i has order 1.
struct RightMove {
  std::vector<TruncSeries> phi;

  static RightMove identity(const Field& f, size_t branches, int prec);
  void validate() const;
};

/// (x, y) -> (X(x,y), Y(x,y)) with invertible linear part and no constant term.
struct LeftMove {
  BivarPoly X;
  BivarPoly Y;

  static LeftMove identity(const Field& f);
  static LeftMove swap(const Field& f);
  /// (x, y) -> (a x + b y, c x + d y)
  static LeftMove linear(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d);
  void validate() const;
  std::string to_string() const;
};

/// (after o before): first `before`, then `after`.
LeftMove compose(const LeftMove& after, const LeftMove& before);

Branch apply(const Branch& b, const TruncSeries& phi, const LeftMove& left);
Branch apply(const Branch& b, const LeftMove& left);
Branch apply(const Branch& b, const TruncSeries& phi);
/// Branchwise left o psi o right.
Parametrization apply(const Parametrization& psi, const RightMove& right, const LeftMove& left);

/// Sum over branches of min(order x_i, order y_i).
int multiplicity(const Parametrization& psi);

/// Drop coefficients above k_i on branch i (JetExceedsTruncation).
Parametrization jet(const Parametrization& psi, const std::vector<int>& k);
Branch jet(const Branch& b, int k);

/// One recorded step: the branch was replaced by Left(branch(phi(t))).
struct TranscriptStep {
  std::string label;
  TruncSeries phi;
  LeftMove left;
};
using Transcript = std::vector<TranscriptStep>;

/// Replays a transcript on a branch.
Branch replay(const Branch& b, const Transcript& tr);

enum class Orientation { XNormalized, YNormalized, Unnormalized };

struct NormalPosition {
  Branch branch;
  int m = 0;
  int n = 0;  // 0 for a smooth branch
  Orientation orientation = Orientation::Unnormalized;
  /// Set when p divides both m and n; the branch is then only reduced
  /// (ord x = m < ord y = n), not normalized.
  std::optional<ErrorCode> status;
  Transcript transcript;
};

/// Moves a branch to ord x = m < ord y = n = min(Gamma \ mZ), then makes
/// x = t^m (p does not divide m) or y = t^n (p divides m only), with the
/// free coordinate monic.
NormalPosition normal_position(const Branch& b);

}  // namespace singclass
