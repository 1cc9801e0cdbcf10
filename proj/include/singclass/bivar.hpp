#pragma once

// Polynomials in x, y over an exact field, optionally truncated in total
// degree, plus the elimination backend (resultants).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singclass/field.hpp"
#include "singclass/series.hpp"

namespace singclass {

class BivarPoly {
 public:
  using Exponent = std::pair<int, int>;  // (deg_x, deg_y)

  /// The zero polynomial; with a truncation degree D, terms of total degree
  /// above D are unknown.
  explicit BivarPoly(const Field& f, std::optional<int> trunc = std::nullopt);

  static BivarPoly monomial(const Field& f, int a, int b, const FieldElem& c);
  static BivarPoly constant(const Field& f, const FieldElem& c) { return monomial(f, 0, 0, c); }
  static BivarPoly x(const Field& f) { return monomial(f, 1, 0, f.one()); }
  static BivarPoly y(const Field& f) { return monomial(f, 0, 1, f.one()); }

  const Field& field() const { return *field_; }
  const std::map<Exponent, FieldElem>& terms() const { return terms_; }
  std::optional<int> trunc() const { return trunc_; }

  FieldElem coeff(int a, int b) const;
  /// Adds c*x^a*y^b (dropped if beyond the truncation).
  void add_term(int a, int b, const FieldElem& c);

  bool is_zero() const { return terms_.empty(); }
  /// Minimal total degree of a term; nullopt for zero.
  std::optional<int> multiplicity() const;
  int total_degree() const;
  int degree_x() const;
  int degree_y() const;

  BivarPoly truncated(int degree) const;

  BivarPoly operator-() const;
  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const FieldElem& c, const BivarPoly& p);
  BivarPoly pow(int k) const;

  /// this(X(x,y), Y(x,y)); X and Y must vanish at the origin when this is
  /// truncated.
  BivarPoly compose(const BivarPoly& X, const BivarPoly& Y) const;

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.field_ == b.field_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  const Field* field_;
  std::optional<int> trunc_;
  std::map<Exponent, FieldElem> terms_;  // no explicit zeros
};

/// g(x(t), y(t)) with truncation propagated from the series and from g.
TruncSeries bivar_substitute(const BivarPoly& g, const TruncSeries& x, const TruncSeries& y);

/// Polynomial in t with coefficients in K[x,y]; entry i is the coefficient of t^i.
using TPoly = std::vector<BivarPoly>;

/// var - s(t) for var in {'x','y'}; s is read as the polynomial of its stored
/// coefficients.
TPoly coordinate_eliminant(char var, const TruncSeries& s);

/// Res_t(f, g) as the determinant of the Sylvester matrix (division-free
/// Berkowitz).  ZeroDegreeInput if either has degree 0 in t.
BivarPoly resultant(const TPoly& f, const TPoly& g);

/// Res_t(x - X(t), y - Y(t)) computed as lc-power times the characteristic
/// polynomial of multiplication by Y(t) on K[x][t]/(X(t) - x).  Agrees with
/// resultant() exactly; much cheaper for large degrees.
BivarPoly coordinate_resultant(const TruncSeries& X, const TruncSeries& Y);

/// Determinant of a square matrix over K[x,y], division-free.
BivarPoly determinant(const std::vector<std::vector<BivarPoly>>& m);

}  // namespace singclass
