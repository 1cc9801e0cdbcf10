#include "singclass/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace singclass {

namespace {

std::string describe(std::size_t pos, const std::vector<std::string>& expected, const std::string& detail) {
  std::ostringstream os;
  os << "at offset " << pos;
  if (!detail.empty()) os << ": " << detail;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
    os << ")";
  }
  return os.str();
}

using Exponent = std::pair<int, int>;

class Parser {
 public:
  // field == nullptr: only the shape and the exponents are read
  Parser(const std::string& text, const Field* field, std::string vars)
      : s_(text), f_(field), vars_(std::move(vars)) {}

  std::map<Exponent, FieldElem> expr(const std::vector<std::string>& followers) {
    std::map<Exponent, FieldElem> out;
    skip();
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = s_[pos_++] == '-';
    for (;;) {
      auto [e, c] = term();
      if (f_) {
        if (negate) c = -c;
        auto [it, fresh] = out.emplace(e, c);
        if (!fresh) it->second += c;
      } else {
        out.emplace(e, FieldElem());
      }
      skip();
      if (peek() != '+' && peek() != '-') break;
      negate = s_[pos_++] == '-';
    }
    std::vector<std::string> exp{"'+'", "'-'"};
    exp.insert(exp.end(), followers.begin(), followers.end());
    expected_after_expr_ = exp;
    if (f_)
      for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(expected_after_expr_.empty() ? std::vector<std::string>{quote(c)} : expected_after_expr_);
    ++pos_;
    expected_after_expr_.clear();
  }

  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    ++pos_;
    expected_after_expr_.clear();
    return true;
  }

  void finish(std::vector<std::string> expected = {"end of input"}) {
    skip();
    if (pos_ != s_.size()) fail(expected_after_expr_.empty() ? expected : expected_after_expr_);
  }

  int max_exponent() const { return max_exp_; }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail = "") const {
    std::string found = pos_ < s_.size() ? "found '" + std::string(1, s_[pos_]) + "'" : "found end of input";
    throw ParseError(ErrorCode::SyntaxError, pos_, std::move(expected), detail.empty() ? found : detail);
  }

 private:
  static std::string quote(char c) { return "'" + std::string(1, c) + "'"; }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool is_var(char c) const { return c != '\0' && vars_.find(c) != std::string::npos; }

  std::vector<std::string> term_start() const {
    std::vector<std::string> out{"integer", "'('"};
    for (char v : vars_) out.push_back(quote(v));
    return out;
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail({"integer"});
    return s_.substr(start, pos_ - start);
  }

  int exponent() {
    skip();
    std::size_t at = pos_;
    std::string d = digits();
    if (d.size() > 5 || std::stoi(d) > kMaxParsedExponent)
      throw ParseError(ErrorCode::SyntaxError, at, {"exponent <= " + std::to_string(kMaxParsedExponent)},
                       "exponent " + d + " is too large");
    return std::stoi(d);
  }

  FieldElem rational() {
    skip();
    std::size_t at = pos_;
    mpz_class num(digits()), den(1);
    if (accept('/')) den = mpz_class(digits());
    if (!f_) return FieldElem();
    if (den == 0) throw ParseError(ErrorCode::CoefficientNotInField, at, {}, "zero denominator");
    try {
      return f_->from_rational(num, den);
    } catch (const Error& e) {
      throw ParseError(ErrorCode::CoefficientNotInField, at, {},
                       num.get_str() + "/" + den.get_str() + " is not an element of " + f_->name());
    }
  }

  // '(' already consumed: a polynomial in the generator a, then ')'
  FieldElem generator_poly(std::size_t open) {
    if (f_ && f_->degree() == 1)
      throw ParseError(ErrorCode::CoefficientNotInField, open, {},
                       "coefficients in a need an extension field, not " + f_->name());
    FieldElem acc = f_ ? f_->zero() : FieldElem();
    skip();
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = s_[pos_++] == '-';
    for (;;) {
      skip();
      FieldElem c = f_ ? f_->one() : FieldElem();
      bool any = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c = rational();
        any = true;
        accept('*');
      }
      skip();
      int e = 0;
      if (peek() == 'a') {
        ++pos_;
        e = 1;
        if (accept('^')) e = exponent();
        any = true;
      }
      if (!any) fail({"integer", "'a'"});
      if (f_) {
        FieldElem term = c * f_->generator().pow(e);
        acc += negate ? -term : term;
      }
      skip();
      if (peek() != '+' && peek() != '-') break;
      negate = s_[pos_++] == '-';
    }
    skip();
    if (peek() != ')') fail({"'+'", "'-'", "')'"});
    ++pos_;
    return acc;
  }

  void monom(Exponent& e) {
    for (;;) {
      skip();
      if (!is_var(peek())) fail(term_start());
      const char v = s_[pos_++];
      int k = 1;
      if (accept('^')) k = exponent();
      (v == vars_[0] ? e.first : e.second) += k;
      if (e.first + e.second > kMaxParsedExponent)
        throw ParseError(ErrorCode::SyntaxError, pos_, {}, "total degree above " + std::to_string(kMaxParsedExponent));
      skip();
      std::size_t save = pos_;
      if (accept('*')) {
        skip();
        if (!is_var(peek())) {
          pos_ = save;
          return;
        }
      } else if (!is_var(peek())) {
        return;
      }
    }
  }

  std::pair<Exponent, FieldElem> term() {
    skip();
    Exponent e{0, 0};
    FieldElem c = f_ ? f_->one() : FieldElem();
    const char first = peek();
    if (std::isdigit(static_cast<unsigned char>(first)) || first == '(') {
      if (first == '(') {
        const std::size_t open = pos_++;
        c = generator_poly(open);
      } else {
        c = rational();
      }
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (!is_var(peek())) {
          std::vector<std::string> exp;
          for (char v : vars_) exp.push_back(quote(v));
          fail(exp);
        }
        monom(e);
      } else if (is_var(peek())) {
        monom(e);
      }
    } else if (is_var(first)) {
      monom(e);
    } else {
      fail(term_start());
    }
    max_exp_ = std::max(max_exp_, e.first + e.second);
    return {e, c};
  }

  const std::string& s_;
  const Field* f_;
  std::string vars_;
  std::size_t pos_ = 0;
  int max_exp_ = 0;
  std::vector<std::string> expected_after_expr_;
};

TruncSeries to_series(const std::map<Exponent, FieldElem>& terms, const Field& f, int prec) {
  std::vector<FieldElem> c(prec + 1, f.zero());
  for (const auto& [e, v] : terms)
    if (e.first <= prec) c[e.first] = v;
  return TruncSeries(f, std::move(c), prec);
}

std::string monomial_text(char var, int e) {
  if (e == 0) return "";
  return e == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(e);
}

// Appends c*mono to out with canonical signs.
void append_term(std::string& out, const FieldElem& c, const std::string& mono) {
  std::string coeff;
  bool negative = false;
  if (c.field().kind() == Field::Kind::Rationals) {
    mpq_class v = c.rational();
    negative = v < 0;
    coeff = mpq_class(abs(v)).get_str();
  } else if (c.field().kind() == Field::Kind::Extension && c.to_string().find('a') != std::string::npos) {
    coeff = "(" + c.to_string() + ")";
  } else {
    coeff = c.to_string();
  }
  if (out.empty())
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  if (mono.empty())
    out += coeff;
  else if (coeff == "1")
    out += mono;
  else
    out += coeff + "*" + mono;
}

}  // namespace

ParseError::ParseError(ErrorCode code, std::size_t position, std::vector<std::string> expected,
                       const std::string& detail)
    : Error(code, describe(position, expected, detail)), position_(position), expected_(std::move(expected)) {}

TruncSeries parse_series(const std::string& text, const Field& f, int prec) {
  Parser p(text, &f, "t");
  auto terms = p.expr({"end of input"});
  p.finish();
  return to_series(terms, f, prec);
}

int written_degree(const std::string& text) {
  Parser p(text, nullptr, "t");
  do {
    p.expect('(');
    p.expr({"','"});
    p.expect(',');
    p.expr({"')'"});
    p.expect(')');
  } while (p.accept(';'));
  p.finish();
  return p.max_exponent();
}

BivarPoly parse_polynomial(const std::string& text, const Field& f) {
  Parser p(text, &f, "xy");
  auto terms = p.expr({"end of input"});
  p.finish();
  BivarPoly g(f);
  for (const auto& [e, v] : terms) g.add_term(e.first, e.second, v);
  return g;
}

Parametrization parse_parametrization(const std::string& text, const Field& f, int prec) {
  Parser p(text, &f, "t");
  std::vector<Branch> branches;
  do {
    p.expect('(');
    auto x = p.expr({"','"});
    p.expect(',');
    auto y = p.expr({"')'"});
    p.expect(')');
    branches.push_back(Branch{to_series(x, f, prec), to_series(y, f, prec)});
  } while (p.accept(';'));
  p.finish({"';'", "end of input"});
  return Parametrization(f, std::move(branches));
}

std::string format_series(const TruncSeries& s) {
  std::string out;
  for (int i = 0; i <= s.degree(); ++i)
    if (!s[i].is_zero()) append_term(out, s[i], monomial_text('t', i));
  return out.empty() ? "0" : out;
}

std::string format_branch(const Branch& b) { return "(" + format_series(b.x) + ", " + format_series(b.y) + ")"; }

std::string format_polynomial(const BivarPoly& g) {
  std::string out;
  // by total degree, then by x-degree descending
  std::vector<std::pair<Exponent, FieldElem>> terms(g.terms().begin(), g.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    return da != db ? da < db : a.first.first > b.first.first;
  });
  for (const auto& [e, c] : terms) {
    std::string mono = monomial_text('x', e.first);
    const std::string ym = monomial_text('y', e.second);
    if (!ym.empty()) mono += (mono.empty() ? "" : "*") + ym;
    append_term(out, c, mono);
  }
  return out.empty() ? "0" : out;
}

}  // namespace singclass
