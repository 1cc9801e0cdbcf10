#include "singclass/parametrization.hpp"

#include <numeric>
#include <sstream>

namespace singclass {

namespace {

FieldElem leading(const TruncSeries& s) { return s[*s.order()]; }

BivarPoly linear_part(const BivarPoly& p) {
  BivarPoly out(p.field());
  out.add_term(1, 0, p.coeff(1, 0));
  out.add_term(0, 1, p.coeff(0, 1));
  return out;
}

int exponent_gcd(const Branch& b) {
  int g = 0;
  for (const TruncSeries* s : {&b.x, &b.y}) {
    for (int i = 1; i <= s->prec(); ++i) {
      if (!(*s)[i].is_zero()) g = std::gcd(g, i);
    }
  }
  return g;
}

}  // namespace

std::string Branch::to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }

Parametrization::Parametrization(const Field& f, std::vector<Branch> branches)
    : field_(&f), branches_(std::move(branches)) {
  if (branches_.empty()) throw Error(ErrorCode::InvalidArgument, "parametrization without branches");
  for (size_t i = 0; i < branches_.size(); ++i) {
    const Branch& b = branches_[i];
    if (&b.x.field() != field_ || &b.y.field() != field_) {
      throw Error(ErrorCode::FieldMismatch, "branch " + std::to_string(i) + " over a different field");
    }
    if (!b.x[0].is_zero() || !b.y[0].is_zero()) {
      throw Error(ErrorCode::NotInMaximalIdeal, "branch " + std::to_string(i) + " has a nonzero constant term");
    }
    if (!b.x.order() && !b.y.order()) {
      throw Error(ErrorCode::TruncationTooSmall, "branch " + std::to_string(i) + " vanishes to its truncation");
    }
  }
}

std::vector<int> Parametrization::truncation() const {
  std::vector<int> out;
  for (const auto& b : branches_) out.push_back(b.prec());
  return out;
}

std::string Parametrization::to_string() const {
  std::string out;
  for (size_t i = 0; i < branches_.size(); ++i) {
    if (i) out += " + ";
    out += branches_[i].to_string();
  }
  return out;
}

RightMove RightMove::identity(const Field& f, size_t branches, int prec) {
  return RightMove{std::vector<TruncSeries>(branches, TruncSeries::identity(f, prec))};
}

void RightMove::validate() const {
  for (const auto& p : phi) {
    if (p.prec() < 1 || !p[0].is_zero() || p[1].is_zero()) {
      throw Error(ErrorCode::NotALocalReparametrization, "reparametrization must have order exactly 1");
    }
  }
}

LeftMove LeftMove::identity(const Field& f) { return LeftMove{BivarPoly::x(f), BivarPoly::y(f)}; }

LeftMove LeftMove::swap(const Field& f) { return LeftMove{BivarPoly::y(f), BivarPoly::x(f)}; }

LeftMove LeftMove::linear(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d) {
  const Field& f = a.field();
  LeftMove m{BivarPoly(f), BivarPoly(f)};
  m.X.add_term(1, 0, a);
  m.X.add_term(0, 1, b);
  m.Y.add_term(1, 0, c);
  m.Y.add_term(0, 1, d);
  m.validate();
  return m;
}

void LeftMove::validate() const {
  if (!X.coeff(0, 0).is_zero() || !Y.coeff(0, 0).is_zero()) {
    throw Error(ErrorCode::NotInMaximalIdeal, "coordinate change with a constant term");
  }
  const FieldElem det = X.coeff(1, 0) * Y.coeff(0, 1) - X.coeff(0, 1) * Y.coeff(1, 0);
  if (det.is_zero()) throw Error(ErrorCode::InvalidArgument, "coordinate change with singular linear part");
}

std::string LeftMove::to_string() const { return "(" + X.to_string() + ", " + Y.to_string() + ")"; }

LeftMove compose(const LeftMove& after, const LeftMove& before) {
  return LeftMove{after.X.compose(before.X, before.Y), after.Y.compose(before.X, before.Y)};
}

Branch apply(const Branch& b, const LeftMove& left) {
  return Branch{bivar_substitute(left.X, b.x, b.y), bivar_substitute(left.Y, b.x, b.y)};
}

Branch apply(const Branch& b, const TruncSeries& phi) {
  return Branch{series_compose(b.x, phi), series_compose(b.y, phi)};
}

Branch apply(const Branch& b, const TruncSeries& phi, const LeftMove& left) { return apply(apply(b, phi), left); }

Parametrization apply(const Parametrization& psi, const RightMove& right, const LeftMove& left) {
  if (right.phi.size() != psi.size()) {
    throw Error(ErrorCode::InvalidArgument, "right move has " + std::to_string(right.phi.size()) +
                                                " components for " + std::to_string(psi.size()) + " branches");
  }
  right.validate();
  left.validate();
  std::vector<Branch> out;
  for (size_t i = 0; i < psi.size(); ++i) out.push_back(apply(psi.branch(i), right.phi[i], left));
  return Parametrization(psi.field(), std::move(out));
}

int multiplicity(const Parametrization& psi) {
  int m = 0;
  for (const auto& b : psi.branches()) m += b.multiplicity();
  return m;
}

Branch jet(const Branch& b, int k) {
  if (k > b.prec()) {
    throw Error(ErrorCode::JetExceedsTruncation,
                "jet order " + std::to_string(k) + " exceeds truncation " + std::to_string(b.prec()));
  }
  return Branch{b.x.truncate(k), b.y.truncate(k)};
}

Parametrization jet(const Parametrization& psi, const std::vector<int>& k) {
  if (k.size() != psi.size()) throw Error(ErrorCode::InvalidArgument, "jet order vector has the wrong length");
  std::vector<Branch> out;
  for (size_t i = 0; i < psi.size(); ++i) out.push_back(jet(psi.branch(i), k[i]));
  return Parametrization(psi.field(), std::move(out));
}

Branch replay(const Branch& b, const Transcript& tr) {
  Branch cur = b;
  for (const auto& s : tr) cur = apply(cur, s.phi, s.left);
  return cur;
}

NormalPosition normal_position(const Branch& input) {
  const Field& f = input.field();
  NormalPosition out{input};
  Branch& cur = out.branch;
  const int prec = cur.prec();
  cur = jet(cur, prec);
  const TruncSeries id = TruncSeries::identity(f, prec);
  auto step = [&](std::string label, const TruncSeries& phi, const LeftMove& left) {
    cur = apply(cur, phi, left);
    out.transcript.push_back({std::move(label), phi, left});
  };
  auto left_step = [&](std::string label, const LeftMove& left) { step(std::move(label), id, left); };
  const BivarPoly X = BivarPoly::x(f), Y = BivarPoly::y(f);

  if (!cur.x.order() && !cur.y.order()) throw Error(ErrorCode::TruncationTooSmall, "branch vanishes to truncation");
  if (!cur.x.order() || (cur.y.order() && *cur.y.order() < *cur.x.order())) left_step("swap", LeftMove::swap(f));
  const int m = *cur.x.order();
  out.m = m;

  // Eliminate y's orders that lie in mZ.
  auto normalize_x = [&]() {
    left_step("scale x", LeftMove{leading(cur.x).inverse() * X, Y});
    const TruncSeries u = cur.x.shift_down(m);
    const TruncSeries w = series_root(u, m).shift_up(1);
    step("reparametrize x = t^" + std::to_string(m), series_reverse(w), LeftMove::identity(f));
  };
  if (m == 1) {
    normalize_x();
    BivarPoly g(f);
    for (int i = 1; i <= cur.y.prec(); ++i) g.add_term(i, 0, cur.y[i]);
    left_step("y -= y(x)", LeftMove{X, Y - g});
    out.orientation = Orientation::XNormalized;
    return out;
  }
  while (auto n = cur.y.order()) {
    if (*n % m != 0) break;
    const int k = *n / m;
    const FieldElem c = leading(cur.y) / leading(cur.x).pow(k);
    left_step("y -= c*x^" + std::to_string(k), LeftMove{X, Y - BivarPoly::monomial(f, k, 0, c)});
  }
  if (!cur.y.order()) {
    if (exponent_gcd(input) > 1) {
      throw Error(ErrorCode::NotPrimitive, "all exponents are divisible by " + std::to_string(exponent_gcd(input)));
    }
    throw Error(ErrorCode::TruncationTooSmall,
                "no order outside " + std::to_string(m) + "Z up to t^" + std::to_string(prec) + "; retry with truncation " +
                    std::to_string(2 * prec));
  }
  const int n = *cur.y.order();
  out.n = n;
  const int p = static_cast<int>(f.characteristic());
  if (p == 0 || m % p != 0) {
    normalize_x();
    left_step("scale y", LeftMove{X, leading(cur.y).inverse() * Y});
    out.orientation = Orientation::XNormalized;
  } else if (n % p != 0) {
    left_step("scale y", LeftMove{X, leading(cur.y).inverse() * Y});
    const TruncSeries u = cur.y.shift_down(n);
    const TruncSeries w = series_root(u, n).shift_up(1);
    step("reparametrize y = t^" + std::to_string(n), series_reverse(w), LeftMove::identity(f));
    left_step("scale x", LeftMove{leading(cur.x).inverse() * X, Y});
    out.orientation = Orientation::YNormalized;
  } else {
    out.status = ErrorCode::BothOrdersDivisibleByP;
  }
  return out;
}

}  // namespace singclass
