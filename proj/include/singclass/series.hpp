#pragma once

// Univariate truncated power series over an exact field.
//
// A TruncSeries stores the coefficients of t^0 .. t^N together with the
// truncation order N; coefficients above N are unknown, not zero.  Every
// operation returns the largest truncation order it can certify from the
// truncation orders (and orders) of its inputs.

#include <optional>
#include <string>
#include <vector>

#include "singclass/field.hpp"

namespace singclass {

class TruncSeries {
 public:
  /// The zero series known up to t^prec.
  TruncSeries(const Field& f, int prec);
  /// Coefficients c[0..]; entries above prec are dropped, missing ones are 0.
  TruncSeries(const Field& f, std::vector<FieldElem> coeffs, int prec);

  static TruncSeries monomial(const Field& f, int exponent, const FieldElem& c, int prec);
  /// The identity reparametrization t.
  static TruncSeries identity(const Field& f, int prec) { return monomial(f, 1, f.one(), prec); }

  const Field& field() const { return *field_; }
  int prec() const { return prec_; }
  /// Coefficient of t^i; i must not exceed prec().
  const FieldElem& operator[](int i) const;
  const std::vector<FieldElem>& coeffs() const { return c_; }

  /// Smallest exponent with a nonzero coefficient, nullopt when every stored
  /// coefficient vanishes (order is "above truncation").
  std::optional<int> order() const;
  /// order() or prec()+1: a certified lower bound for the true order.
  int order_bound() const;
  bool is_unit() const { return !c_[0].is_zero(); }
  /// Highest exponent with a nonzero stored coefficient, -1 if none.
  int degree() const;

  /// Drop coefficients above n (n <= prec()).
  TruncSeries truncate(int n) const;
  TruncSeries with_coeff(int i, const FieldElem& c) const;

  TruncSeries operator-() const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const FieldElem& c, const TruncSeries& s);

  /// Multiply by t^k.
  TruncSeries shift_up(int k) const;
  /// Divide by t^k; the first k coefficients must vanish.
  TruncSeries shift_down(int k) const;
  TruncSeries pow(int k) const;
  TruncSeries derivative() const;

  /// Exact equality of stored coefficients and truncation order.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);
  /// Agreement of coefficients up to min(prec) (or n, when smaller).
  bool agrees_with(const TruncSeries& o, int n = -1) const;

  std::string to_string(char var = 't') const;

 private:
  const Field* field_;
  std::vector<FieldElem> c_;  // size prec_+1
  int prec_;
};

/// Order of s, nullopt meaning AboveTruncation.
inline std::optional<int> series_order(const TruncSeries& s) { return s.order(); }

/// s(phi(t)).  phi must have order >= 1 (NotALocalReparametrization).
TruncSeries series_compose(const TruncSeries& s, const TruncSeries& phi);

/// a*b with truncation at most cap (only the needed coefficients are formed).
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b, int cap);

/// Multiplicative inverse of a unit.
TruncSeries series_inverse(const TruncSeries& u);

/// v with v^m = u.  u must be a unit, p must not divide m
/// (CharacteristicDividesM); u(0) needs an m-th root in the field
/// (NoRootInField, message names the minimal extension degree).
TruncSeries series_root(const TruncSeries& u, int m);

/// Compositional inverse of a series of order exactly 1.
TruncSeries series_reverse(const TruncSeries& phi);

}  // namespace singclass
