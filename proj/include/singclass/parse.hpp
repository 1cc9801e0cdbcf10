#pragma once

// Text input: series in t, polynomials in x and y, and parametrizations
// "(x(t), y(t))" with several branches separated by ';'.
//
//   expr  := ['+'|'-'] term (('+'|'-') term)*
//   term  := coeff ['*'] [monom] | monom
//   monom := var ['^' nat] (['*'] var ['^' nat])*
//   coeff := integer ['/' integer] | '(' a-polynomial ')'
//
// The parenthesized coefficient names an element of F_{p^k} in the
// generator a, as FieldElem::to_string prints it.

#include <cstddef>
#include <string>
#include <vector>

#include "singclass/bivar.hpp"
#include "singclass/parametrization.hpp"

namespace singclass {

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, std::vector<std::string> expected, const std::string& detail);

  /// 0-based offset into the source text.
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Largest exponent accepted by the parser.
inline constexpr int kMaxParsedExponent = 4096;

/// A series in t known to t^prec; terms above prec are dropped.
TruncSeries parse_series(const std::string& text, const Field& f, int prec);

/// Highest exponent of t written in the text (0 when none).
int written_degree(const std::string& text);

BivarPoly parse_polynomial(const std::string& text, const Field& f);

/// One or more "(x(t), y(t))" separated by ';'.  Each coordinate is known to
/// t^prec.
Parametrization parse_parametrization(const std::string& text, const Field& f, int prec);

/// Stored coefficients as an expression the parser reads back exactly.
std::string format_series(const TruncSeries& s);
std::string format_branch(const Branch& b);
std::string format_polynomial(const BivarPoly& g);

}  // namespace singclass
