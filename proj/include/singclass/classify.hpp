#pragma once

// Simpleness gate, type assignment, the catalog of simple irreducible plane
// curve singularities, implicitization and equation/parametrization checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "singclass/normalform.hpp"

namespace singclass {

enum class TypeTag { Smooth, A, E, W, WSharp, NotSimple, Unclassified };

struct SingularityType {
  TypeTag tag = TypeTag::Unclassified;
  int index = 0;  // A_index, E_index, W_index; for W# the index 2q-1
  std::optional<int> epsilon;
  std::optional<int> q;
  std::string condition;  // NotSimple: "i".."vi" or "modulus-witness"
  std::uint32_t characteristic = 0;

  std::string name() const;  // "A_4", "E_12", "W_18", "W#_3", "NotSimple(iv)", "Smooth"
  std::string params() const;  // "eps=1,q=2" style, empty when none
  bool same_class_name(const SingularityType& o) const { return tag == o.tag && index == o.index; }
  friend bool operator==(const SingularityType& a, const SingularityType& b) {
    return a.tag == b.tag && a.index == b.index && a.epsilon == b.epsilon && a.q == b.q && a.condition == b.condition;
  }
};

/// First failing condition of the necessary criteria for simpleness
/// ("i".."vi"), or nullopt.  Expects m < n.
std::optional<std::string> simpleness_gate(int m, int n, std::uint32_t p);

/// An equation P0 + sum_i a_i B_i with unknown template coefficients a_i.
struct EquationTemplate {
  BivarPoly fixed;
  std::vector<BivarPoly> free_terms;
  std::string text;
};

struct CatalogRow {
  SingularityType type;
  Branch param;               // as printed in the table
  std::string param_text;     // table presentation, e.g. "(t^5, t^2 + t^3)"
  EquationTemplate equation;
  int conductor = 0;
  std::string key() const { return type.name() + (type.params().empty() ? "" : "[" + type.params() + "]"); }
};

/// Rows valid in characteristic p (0 for the rationals) with k, q bounded by
/// k_max, q_max.  Parametrizations are polynomials known to t^prec.
std::vector<CatalogRow> catalog(std::uint32_t p, int k_max, int q_max, int prec = 64);

/// Equation of a polynomial branch, Res_t(x - x(t), y - y(t)) scaled so the
/// term of highest y-degree (then x-degree) is monic.  NotPolynomial when the
/// branch's stored coefficients reach its truncation; NotPrimitive.
BivarPoly implicitize(const Branch& b);

struct ConsistencyResult {
  bool consistent = false;
  bool swapped = false;
  std::optional<FieldElem> alpha, beta;
  std::vector<FieldElem> solved;  // template coefficients a_i
  int vanishing_order = 0;        // best order reached: equation(param) = O(t^order)
  std::string detail;
};

/// Searches a coordinate swap, scalars alpha, beta and the template
/// coefficients so that equation(alpha u, beta v) vanishes mod t^N along the
/// row's parametrization (u, v).  N = 2c by default.
ConsistencyResult consistency_check(const CatalogRow& row, int N = 0);

struct ClassificationReport {
  int branches = 1;
  int m = 0, n = 0;
  std::optional<ValueSemigroup> semigroup;
  ConductorVector conductor;
  DeterminacyBound determinacy;
  SingularityType type;
  std::optional<ReductionResult> reduction;
  std::optional<std::string> catalog_key;    // matched row
  bool catalog_equivalent_over_base = false;  // certificate replayed
  std::string note;
};

/// Full pipeline: normal position, invariants, gate, reduction, type and
/// catalog match.  Multi-branch input gets invariants and determinacy only.
ClassificationReport classify_full(const Parametrization& psi);

/// Type from the invariants and the reduction residuals (gate must pass).
/// ConductorOutOfTableRange when the conductor fits no row.
SingularityType assign_type(int m, int n, int c, const ReductionResult& r, std::uint32_t p);

}  // namespace singclass
