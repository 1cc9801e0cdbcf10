#pragma once

// Exact coefficient fields: the rationals, prime fields F_p and extensions
// F_{p^k} = F_p[X]/(modulus).  Fields are interned for the lifetime of the
// process, so elements carry a plain pointer to their field and two elements
// over the same field compare structurally.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "singclass/error.hpp"

namespace singclass {

class FieldElem;

class Field {
 public:
  enum class Kind { Rationals, Prime, Extension };

  static const Field& rationals();
  /// Throws NotAField unless p is prime.
  static const Field& prime(std::uint32_t p);
  /// Extension of degree k over F_p with the lexicographically first monic
  /// irreducible modulus.  k = 1 returns the prime field.
  static const Field& extension(std::uint32_t p, int degree);
  /// Extension with an explicit monic modulus (coefficients low to high).
  /// Throws ReducibleModulus if the polynomial factors over F_p.
  static const Field& extension(std::uint32_t p, std::vector<std::uint32_t> modulus);
  /// Characteristic 0 maps to the rationals, otherwise F_{p^k}.
  static const Field& from_characteristic(std::uint32_t p, int degree = 1);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  Kind kind() const noexcept { return kind_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  /// Degree over the prime field (1 for Q and F_p).
  int degree() const noexcept { return degree_; }
  bool is_finite() const noexcept { return kind_ != Kind::Rationals; }
  /// Number of elements; 0 for Q.  Saturates at UINT64_MAX.
  std::uint64_t size() const noexcept { return size_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(long long v) const;
  /// num/den reduced into the field; CoefficientNotInField if den vanishes.
  FieldElem from_rational(const mpz_class& num, const mpz_class& den) const;
  /// Residue vector (low to high, length degree()) for finite fields.
  FieldElem from_residues(std::vector<std::uint32_t> r) const;
  /// The class of X in F_p[X]/(modulus).
  FieldElem generator() const;
  /// Bijection [0, size) -> field for finite fields (base-p digits).
  FieldElem element_at(std::uint64_t index) const;

  std::string name() const;

 private:
  Field(Kind kind, std::uint32_t p, std::vector<std::uint32_t> modulus);

  Kind kind_;
  std::uint32_t p_;
  int degree_;
  std::uint64_t size_;
  std::vector<std::uint32_t> modulus_;  // monic, low to high, size degree_+1
};

bool is_prime(std::uint64_t n);

class FieldElem {
 public:
  FieldElem() = default;

  const Field& field() const { return *field_; }
  bool valid() const noexcept { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  /// Q only.
  const mpq_class& rational() const;
  /// F_p only.
  std::uint32_t residue() const;
  /// Finite fields: coordinates over F_p, low to high, length degree().
  std::vector<std::uint32_t> residues() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  FieldElem inverse() const;
  FieldElem pow(long long e) const;
  /// Multiply by an integer (reduced into the field).
  FieldElem times(long long k) const;

  /// Total order for deterministic containers; not a field order.
  friend bool canonical_less(const FieldElem& a, const FieldElem& b);

  std::string to_string() const;

 private:
  friend class Field;
  using Ext = std::vector<std::uint32_t>;
  FieldElem(const Field* f, std::variant<std::uint32_t, mpq_class, Ext> v)
      : field_(f), v_(std::move(v)) {}

  void check_same(const FieldElem& o) const;

  const Field* field_ = nullptr;
  std::variant<std::uint32_t, mpq_class, Ext> v_;
};

/// Maximum extension degree for on-demand root extraction: SINGCLASS_MAX_EXT
/// or 12.
int max_extension_degree();

/// An m-th root of a in a's own field, if one exists.
std::optional<FieldElem> root_in_field(const FieldElem& a, int m);

/// All m-th roots of a in a's own field (for Q: the real rational ones).
/// Finite fields are enumerated; fields above 2^22 elements throw
/// ExtensionBoundExceeded.
std::vector<FieldElem> all_roots_in_field(const FieldElem& a, int m);

/// Smallest k such that a has an m-th root in the degree-k extension of a's
/// field, or nullopt beyond max_degree.  Finite fields only.
std::optional<int> root_extension_degree(const FieldElem& a, int m, int max_degree);

/// Map a into a finite field containing its field (the target degree must be
/// a multiple of the source degree).
FieldElem embed(const FieldElem& a, const Field& target);

/// An element r with r^m = a, in a's field when possible, otherwise in the
/// minimal extension F_{p^k}.  Errors: NoRationalRoot over Q,
/// ExtensionBoundExceeded beyond max_ext.
FieldElem field_root(const FieldElem& a, int m, int max_ext = max_extension_degree());

}  // namespace singclass
