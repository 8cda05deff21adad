#include "matfrag/galois.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace matfrag {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotASubfield: return "NotASubfield";
    case ErrorKind::DegreeCap: return "DegreeCap";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::LabelCollision: return "LabelCollision";
    case ErrorKind::InvalidArgs: return "InvalidArgs";
    case ErrorKind::InvalidMinorSpec: return "InvalidMinorSpec";
    case ErrorKind::GroundSetMismatch: return "GroundSetMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotFragile: return "NotFragile";
    case ErrorKind::PostconditionViolation: return "PostconditionViolation";
    case ErrorKind::MalformedJson: return "MalformedJson";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::Exhausted: return "Exhausted";
  }
  return "Unknown";
}

namespace detail {

// Fields up to this order get exp/log tables.
constexpr Code kTableLimit = Code{1} << 20;
constexpr Code kOrderLimit = Code{1} << 62;

struct FieldData {
  unsigned p = 2;
  std::vector<TowerStep> tower;
  Code order = 2;
  unsigned degree = 1;
  std::shared_ptr<const FieldData> parent;
  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;

  bool has_tables() const { return !exp.empty(); }
};

namespace {

Code add_digits(unsigned p, Code a, Code b) {
  if (p == 2) return a ^ b;
  Code r = 0, place = 1;
  while (a != 0 || b != 0) {
    r += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return r;
}

Code neg_digits(unsigned p, Code a) {
  if (p == 2) return a;
  Code r = 0, place = 1;
  while (a != 0) {
    r += ((p - a % p) % p) * place;
    a /= p;
    place *= p;
  }
  return r;
}

Code fd_mul(const FieldData& f, Code a, Code b);

Code slow_mul(const FieldData& f, Code a, Code b) {
  const FieldData& P = *f.parent;
  const TowerStep& step = f.tower.back();
  const unsigned d = step.degree;
  const Code Q = P.order;
  std::vector<Code> x(d), y(d), r(2 * d - 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    x[i] = a % Q;
    a /= Q;
    y[i] = b % Q;
    b /= Q;
  }
  for (unsigned i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) {
      if (y[j] == 0) continue;
      r[i + j] = add_digits(P.p, r[i + j], fd_mul(P, x[i], y[j]));
    }
  }
  for (std::size_t i = r.size(); i-- > d;) {
    const Code c = r[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < d; ++j) {
      const Code t = fd_mul(P, c, step.modulus[j]);
      r[i - d + j] = add_digits(P.p, r[i - d + j], neg_digits(P.p, t));
    }
    r[i] = 0;
  }
  Code out = 0;
  for (unsigned i = d; i-- > 0;) out = out * Q + r[i];
  return out;
}

Code fd_mul(const FieldData& f, Code a, Code b) {
  if (a == 0 || b == 0) return 0;
  if (f.tower.empty()) return (a * b) % f.p;
  if (f.has_tables()) {
    const Code n = f.order - 1;
    return f.exp[(f.log[a] + f.log[b]) % n];
  }
  return slow_mul(f, a, b);
}

Code fd_pow(const FieldData& f, Code a, std::uint64_t e) {
  Code result = 1;
  while (e != 0) {
    if (e & 1) result = fd_mul(f, result, a);
    a = fd_mul(f, a, a);
    e >>= 1;
  }
  return result;
}

std::vector<Code> prime_factors(Code n) {
  std::vector<Code> out;
  for (Code d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void build_tables(FieldData& f) {
  const Code n = f.order - 1;
  const auto factors = prime_factors(n);
  Code g = 0;
  for (Code cand = 2; cand < f.order; ++cand) {
    bool primitive = true;
    for (Code r : factors) {
      if (fd_pow(f, cand, n / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  if (g == 0) g = 1;  // order 2 or 3 with a one-element group
  std::vector<std::uint32_t> exp(n), log(f.order, 0);
  Code x = 1;
  for (Code i = 0; i < n; ++i) {
    exp[i] = static_cast<std::uint32_t>(x);
    log[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(f, x, g);
  }
  f.exp = std::move(exp);
  f.log = std::move(log);
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string cache_key(unsigned p, const std::vector<TowerStep>& tower) {
  std::ostringstream os;
  os << p;
  for (const auto& s : tower) {
    os << '|' << s.degree << ':';
    for (Code c : s.modulus) os << c << ',';
  }
  return os.str();
}

// Function-local so fields can be built during static initialization.
struct FieldCache {
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const FieldData>> fields;
};

FieldCache& field_cache() {
  static FieldCache cache;
  return cache;
}

// Builds (or fetches) the field for an already validated tower.
std::shared_ptr<const FieldData> intern(unsigned p, const std::vector<TowerStep>& tower) {
  const std::string key = cache_key(p, tower);
  {
    std::lock_guard lock(field_cache().mutex);
    if (auto it = field_cache().fields.find(key); it != field_cache().fields.end()) return it->second;
  }
  auto data = std::make_shared<FieldData>();
  data->p = p;
  data->tower = tower;
  if (tower.empty()) {
    data->order = p;
    data->degree = 1;
  } else {
    std::vector<TowerStep> prefix(tower.begin(), tower.end() - 1);
    data->parent = intern(p, prefix);
    data->order = data->parent->order;
    for (unsigned i = 1; i < tower.back().degree; ++i) data->order *= data->parent->order;
    data->degree = data->parent->degree * tower.back().degree;
    if (data->order <= kTableLimit) build_tables(*data);
  }
  std::lock_guard lock(field_cache().mutex);
  auto [it, inserted] = field_cache().fields.emplace(key, std::move(data));
  return it->second;
}

}  // namespace
}  // namespace detail

using detail::FieldData;

// ---------------------------------------------------------------- Field

Field Field::prime(unsigned p, const FieldLimits& limits) {
  if (p > 65536 || !detail::is_prime(p))
    throw Error(ErrorKind::InvalidField, std::to_string(p) + " is not a prime <= 2^16");
  if (p > limits.max_prime)
    throw Error(ErrorKind::InvalidField, "characteristic " + std::to_string(p) +
                                             " exceeds the cap " + std::to_string(limits.max_prime));
  return Field(detail::intern(p, {}));
}

Field Field::from_tower(unsigned p, const std::vector<TowerStep>& tower, const FieldLimits& limits) {
  Field f = prime(p, limits);
  unsigned degree = 1;
  for (std::size_t i = 0; i < tower.size(); ++i) {
    const TowerStep& step = tower[i];
    const std::string where = "tower step " + std::to_string(i);
    if (step.degree < 1) throw Error(ErrorKind::InvalidField, where + ": degree must be >= 1");
    if (step.modulus.size() != step.degree + 1)
      throw Error(ErrorKind::InvalidField, where + ": modulus must have degree+1 coefficients");
    if (step.modulus.back() != 1)
      throw Error(ErrorKind::InvalidField, where + ": modulus " + poly::to_string(step.modulus) +
                                               " is not monic");
    for (Code c : step.modulus)
      if (!f.contains(c))
        throw Error(ErrorKind::InvalidField, where + ": coefficient " + std::to_string(c) +
                                                 " is outside " + f.name());
    degree *= step.degree;
    if (degree > limits.max_degree)
      throw Error(ErrorKind::DegreeCap, "total degree " + std::to_string(degree) +
                                            " exceeds the cap " + std::to_string(limits.max_degree));
    if (!poly::is_irreducible(f, step.modulus))
      throw Error(ErrorKind::InvalidField, where + ": modulus " + poly::to_string(step.modulus) +
                                               " is not irreducible over " + f.name());
    std::vector<TowerStep> prefix(tower.begin(), tower.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    f = Field(detail::intern(p, prefix));
  }
  return f;
}

unsigned Field::characteristic() const { return d_->p; }
unsigned Field::degree() const { return d_->degree; }
Code Field::order() const { return d_->order; }
const std::vector<TowerStep>& Field::tower() const { return d_->tower; }

Field Field::prefix(std::size_t steps) const {
  if (steps >= d_->tower.size()) return *this;
  std::shared_ptr<const FieldData> d = d_;
  while (d->tower.size() > steps) d = d->parent;
  return Field(std::move(d));
}

bool Field::is_subfield_of(const Field& other) const {
  if (d_ == other.d_) return true;
  if (d_->p != other.d_->p || d_->tower.size() > other.d_->tower.size()) return false;
  for (std::size_t i = 0; i < d_->tower.size(); ++i)
    if (!(d_->tower[i] == other.d_->tower[i])) return false;
  return true;
}

bool Field::operator==(const Field& other) const {
  return d_ == other.d_ || (d_->p == other.d_->p && d_->tower == other.d_->tower);
}

Code Field::add(Code a, Code b) const { return detail::add_digits(d_->p, a, b); }
Code Field::neg(Code a) const { return detail::neg_digits(d_->p, a); }
Code Field::sub(Code a, Code b) const { return add(a, neg(b)); }
Code Field::mul(Code a, Code b) const { return detail::fd_mul(*d_, a, b); }
Code Field::pow(Code a, std::uint64_t e) const { return detail::fd_pow(*d_, a, e); }

Code Field::inv(Code a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + name());
  if (d_->has_tables()) {
    const Code n = d_->order - 1;
    return d_->exp[(n - d_->log[a]) % n];
  }
  return pow(a, d_->order - 2);
}

FieldElem Field::elem(Code c) const { return FieldElem(*this, c); }
FieldElem Field::zero() const { return FieldElem(*this, 0); }
FieldElem Field::one() const { return FieldElem(*this, 1); }

FieldElem Field::generator() const {
  if (d_->tower.empty()) return one();
  return FieldElem(*this, d_->parent->order);
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << d_->p;
  if (!d_->tower.empty()) {
    os << '^' << d_->degree;
    if (d_->tower.size() > 1) {
      os << "; tower ";
      for (std::size_t i = 0; i < d_->tower.size(); ++i) os << (i ? "x" : "") << d_->tower[i].degree;
    }
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- elements

FieldElem::FieldElem(Field field, Code code) : field_(std::move(field)), code_(code) {
  if (!field_.contains(code_))
    throw Error(ErrorKind::InvalidArgs,
                "code " + std::to_string(code_) + " is not an element of " + field_.name());
}

namespace {
const Field& common(const FieldElem& a, const FieldElem& b) {
  if (a.field() != b.field())
    throw Error(ErrorKind::FieldMismatch, a.field().name() + " vs " + b.field().name());
  return a.field();
}
}  // namespace

Field make_prime_field(unsigned p, const FieldLimits& limits) { return Field::prime(p, limits); }

FieldElem add(const FieldElem& a, const FieldElem& b) {
  const Field& F = common(a, b);
  return FieldElem(F, F.add(a.code(), b.code()));
}
FieldElem sub(const FieldElem& a, const FieldElem& b) {
  const Field& F = common(a, b);
  return FieldElem(F, F.sub(a.code(), b.code()));
}
FieldElem neg(const FieldElem& a) { return FieldElem(a.field(), a.field().neg(a.code())); }
FieldElem mul(const FieldElem& a, const FieldElem& b) {
  const Field& F = common(a, b);
  return FieldElem(F, F.mul(a.code(), b.code()));
}
FieldElem inv(const FieldElem& a) { return FieldElem(a.field(), a.field().inv(a.code())); }
FieldElem pow(const FieldElem& a, std::uint64_t e) {
  return FieldElem(a.field(), a.field().pow(a.code(), e));
}

Field extend_field(const Field& base, unsigned k, const FieldLimits& limits) {
  if (k == 0) throw Error(ErrorKind::InvalidArgs, "extension degree must be >= 1");
  if (k == 1) return base;
  const unsigned total = base.degree() * k;
  if (total > limits.max_degree)
    throw Error(ErrorKind::DegreeCap, "total degree " + std::to_string(total) + " exceeds the cap " +
                                          std::to_string(limits.max_degree));
  {
    Code q = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (q > detail::kOrderLimit / base.order())
        throw Error(ErrorKind::DegreeCap, "field order overflows 2^62");
      q *= base.order();
    }
  }
  const Code Q = base.order();
  // Coefficient c_0 varies slowest; c_0 = 0 would make x a factor.
  std::vector<Code> coeffs(k, 0);
  coeffs[0] = 1;
  while (true) {
    poly::Poly f(coeffs.begin(), coeffs.end());
    f.push_back(1);
    if (poly::is_irreducible(base, f)) {
      std::vector<TowerStep> tower = base.tower();
      tower.push_back(TowerStep{k, f});
      return Field(detail::intern(base.characteristic(), tower));
    }
    std::size_t i = k;
    while (i-- > 0) {
      if (++coeffs[i] < Q) break;
      coeffs[i] = 0;
      if (i == 0) throw Error(ErrorKind::InvalidField, "no irreducible polynomial found");
    }
  }
}

FieldElem embed(const FieldElem& a, const Field& target) {
  if (!a.field().is_subfield_of(target))
    throw Error(ErrorKind::NotASubfield, a.field().name() + " is not a tower prefix of " + target.name());
  return FieldElem(target, a.code());
}

bool is_in_subfield(const FieldElem& a, const Field& sub) {
  if (!sub.is_subfield_of(a.field()))
    throw Error(ErrorKind::NotASubfield, sub.name() + " is not a tower prefix of " + a.field().name());
  return a.code() < sub.order();
}

std::vector<FieldElem> subfield_basis(const Field& ext, const Field& over) {
  if (ext == over) return {ext.one()};
  if (!over.is_subfield_of(ext) || ext.tower().size() != over.tower().size() + 1)
    throw Error(ErrorKind::NotASubfield, ext.name() + " is not a one-step extension of " + over.name());
  std::vector<FieldElem> basis;
  Code c = 1;
  for (unsigned i = 0; i < ext.tower().back().degree; ++i) {
    basis.emplace_back(ext, c);
    c *= over.order();
  }
  return basis;
}

// ---------------------------------------------------------------- polynomials

namespace poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly mod(const Field& F, Poly a, const Poly& m) {
  Poly mm = m;
  trim(mm);
  trim(a);
  if (mm.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial reduction modulo zero");
  const std::size_t dm = mm.size() - 1;
  const Code lead_inv = F.inv(mm.back());
  while (a.size() >= mm.size()) {
    const Code c = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = F.sub(a[shift + j], F.mul(c, mm[j]));
    trim(a);
  }
  return a;
}

Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return mod(F, std::move(r), m);
}

Poly gcd(const Field& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible(const Field& F, const Poly& f_in) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  const Poly x{0, 1};
  Poly h = x;
  for (std::size_t i = 1; i <= n / 2; ++i) {
    // h <- h^Q mod f, so after step i we hold x^{Q^i}.
    Poly acc{1}, base = h;
    for (std::uint64_t e = F.order(); e != 0; e >>= 1) {
      if (e & 1) acc = mulmod(F, acc, base, f);
      base = mulmod(F, base, base, f);
    }
    h = acc;
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = F.sub(diff[1], 1);
    trim(diff);
    if (diff.empty()) return false;  // x^{Q^i} = x mod f: f has a factor of degree dividing i
    if (gcd(F, f, diff).size() > 1) return false;
  }
  return true;
}

std::string to_string(const Poly& f) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
  os << ']';
  return os.str();
}

}  // namespace poly

}  // namespace matfrag
