#pragma once

// Exact arithmetic in finite fields GF(p^n) built as towers of extensions.
//
// An element of a tower level of degree d over a previous level of order Q is
// a polynomial c_0 + c_1 t + ... + c_{d-1} t^{d-1} in the generator t of that
// level.  Elements are stored as integer codes
//
//     code = c_0 + c_1 Q + ... + c_{d-1} Q^{d-1}
//
// where each c_i is itself the code of a previous-level element.  Because a
// constant polynomial keeps its code, the embedding of a subfield of the tower
// is the identity on codes, and the image of a level of order Q is exactly
// the codes below Q.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "matfrag/errors.hpp"

namespace matfrag {

using Code = std::uint64_t;

struct TowerStep {
  unsigned degree = 1;
  // Monic modulus over the previous level, constant term first; size degree+1.
  std::vector<Code> modulus;

  bool operator==(const TowerStep&) const = default;
};

// Resource caps for field construction.  Exhaustive checks downstream assume
// desk-scale fields.
struct FieldLimits {
  unsigned max_prime = 13;
  unsigned max_degree = 16;
};

namespace detail {
struct FieldData;
}

class FieldElem;

// Immutable handle to a concrete field.  Copies share the same tables.
class Field {
 public:
  // Throws InvalidField for a composite or out-of-range p.
  static Field prime(unsigned p, const FieldLimits& limits = {});

  // Builds the tower given explicitly (e.g. read from a file).  Every modulus
  // is validated: monic, right degree, reduced coefficients, irreducible.
  static Field from_tower(unsigned p, const std::vector<TowerStep>& tower,
                          const FieldLimits& limits = {});

  unsigned characteristic() const;
  // Total degree n over the prime field.
  unsigned degree() const;
  Code order() const;
  const std::vector<TowerStep>& tower() const;

  // The field given by the first `steps` tower steps.
  Field prefix(std::size_t steps) const;
  // The level below the top step (the prime field stays itself).
  Field parent() const { return prefix(tower().empty() ? 0 : tower().size() - 1); }
  // True iff this field's tower is a prefix of `other`'s.
  bool is_subfield_of(const Field& other) const;

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code inv(Code a) const;  // throws DivisionByZero on 0
  Code pow(Code a, std::uint64_t e) const;

  bool contains(Code c) const { return c < order(); }
  FieldElem elem(Code c) const;
  FieldElem zero() const;
  FieldElem one() const;
  // The generator t of the top tower step (the prime field returns 1).
  FieldElem generator() const;

  // "GF(2)", "GF(2^2)", "GF(2^2^2)" style name listing the step degrees.
  std::string name() const;

  bool operator==(const Field& other) const;
  bool operator!=(const Field& other) const { return !(*this == other); }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  friend Field extend_field(const Field&, unsigned, const FieldLimits&);

  std::shared_ptr<const detail::FieldData> d_;
};

class FieldElem {
 public:
  FieldElem(Field field, Code code);

  const Field& field() const { return field_; }
  Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  bool operator==(const FieldElem& other) const {
    return code_ == other.code_ && field_ == other.field_;
  }

 private:
  Field field_;
  Code code_;
};

Field make_prime_field(unsigned p, const FieldLimits& limits = {});

// Adjoins one step of degree k whose modulus is the lexicographically least
// monic irreducible (coefficient sequence compared from the constant term
// up).  k == 1 returns base unchanged.
Field extend_field(const Field& base, unsigned k, const FieldLimits& limits = {});

FieldElem add(const FieldElem& a, const FieldElem& b);
FieldElem sub(const FieldElem& a, const FieldElem& b);
FieldElem neg(const FieldElem& a);
FieldElem mul(const FieldElem& a, const FieldElem& b);
FieldElem inv(const FieldElem& a);
FieldElem pow(const FieldElem& a, std::uint64_t e);

inline FieldElem operator+(const FieldElem& a, const FieldElem& b) { return add(a, b); }
inline FieldElem operator-(const FieldElem& a, const FieldElem& b) { return sub(a, b); }
inline FieldElem operator-(const FieldElem& a) { return neg(a); }
inline FieldElem operator*(const FieldElem& a, const FieldElem& b) { return mul(a, b); }

// Canonical inclusion of a's field into `target`; requires a's tower to be a
// prefix of target's (NotASubfield otherwise).
FieldElem embed(const FieldElem& a, const Field& target);

// True iff a lies in the image of `sub` under embed.
bool is_in_subfield(const FieldElem& a, const Field& sub);

// Power basis 1, t, ..., t^{k-1} of `ext` over `over`, where `ext` is `over`
// plus one step of degree k (or equal to `over`, giving (1)).
std::vector<FieldElem> subfield_basis(const Field& ext, const Field& over);

// Polynomial helpers over a field, coefficient vectors constant term first.
namespace poly {

using Poly = std::vector<Code>;

void trim(Poly& f);
Poly mod(const Field& F, Poly a, const Poly& m);
Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m);
Poly gcd(const Field& F, Poly a, Poly b);
// Ben-Or irreducibility test for a polynomial of degree >= 1.
bool is_irreducible(const Field& F, const Poly& f);
std::string to_string(const Poly& f);

}  // namespace poly

}  // namespace matfrag
