#include "hecke/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

namespace {

using IntPoly = std::vector<Integer>;

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials by a monic divisor.
IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {};
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    Integer c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<Integer> cyclotomic_polynomial(long n) {
  if (n < 1) throw Error(ErrorKind::OrderNotSupported, "cyclotomic polynomial of order < 1");
  static std::mutex mutex;
  static std::map<long, IntPoly> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  }
  trim(p);
  std::lock_guard lock(mutex);
  memo.emplace(n, p);
  return p;
}

const CyclotomicField& CyclotomicField::get(long conductor) {
  if (conductor < 1) {
    throw Error(ErrorKind::OrderNotSupported, "field conductor must be positive, got " + std::to_string(conductor));
  }
  static std::mutex mutex;
  static std::map<long, std::unique_ptr<CyclotomicField>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[conductor];
  if (!slot) slot.reset(new CyclotomicField(conductor));
  return *slot;
}

CyclotomicField::CyclotomicField(long conductor)
    : conductor_(conductor), modulus_(cyclotomic_polynomial(conductor)) {
  degree_ = static_cast<int>(modulus_.size()) - 1;
  powers_.assign(conductor_, std::vector<Integer>(degree_, 0));
  // zeta^0 = 1, then multiply by zeta and reduce with the monic modulus.
  std::vector<Integer> current(degree_, 0);
  current[0] = 1;
  for (long k = 0; k < conductor_; ++k) {
    powers_[k] = current;
    Integer top = current[degree_ - 1];
    for (int i = degree_ - 1; i > 0; --i) current[i] = current[i - 1];
    current[0] = 0;
    if (top != 0) {
      for (int i = 0; i < degree_; ++i) current[i] -= top * modulus_[i];
    }
  }
  for (long k = 0; k < conductor_; ++k) {
    if (std::gcd(k, conductor_) == 1) galois_exponents_.push_back(k);
  }
  if (conductor_ == 1) galois_exponents_ = {0};
}

const std::vector<Integer>& CyclotomicField::zeta_power(long k) const {
  long r = k % conductor_;
  if (r < 0) r += conductor_;
  return powers_[r];
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(long value) {
  if (value != 0) num_ = {Integer(value)};
}

FieldElement::FieldElement(const Rational& value) {
  if (value != 0) {
    num_ = {value.get_num()};
    den_ = value.get_den();
  }
}

FieldElement::FieldElement(const CyclotomicField& field, const Rational& value) : field_(&field) {
  if (value != 0) {
    num_.assign(field.degree(), 0);
    num_[0] = value.get_num();
    den_ = value.get_den();
  }
}

FieldElement FieldElement::zeta(const CyclotomicField& field, long power) {
  return from_raw(&field, field.zeta_power(power), 1);
}

FieldElement FieldElement::from_coefficients(const CyclotomicField& field,
                                             const std::vector<Rational>& coefficients) {
  if (static_cast<int>(coefficients.size()) != field.degree()) {
    throw Error(ErrorKind::FieldMismatch, "expected " + std::to_string(field.degree()) + " coefficients, got " +
                                              std::to_string(coefficients.size()));
  }
  Integer den = 1;
  for (const auto& c : coefficients) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> num(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    num[i] = coefficients[i].get_num() * (den / coefficients[i].get_den());
  }
  return from_raw(&field, std::move(num), den);
}

FieldElement FieldElement::from_raw(const CyclotomicField* field, std::vector<Integer> num, Integer den) {
  FieldElement a;
  a.field_ = field;
  a.num_ = std::move(num);
  a.den_ = std::move(den);
  a.normalize();
  return a;
}

void FieldElement::normalize() {
  bool all_zero = std::all_of(num_.begin(), num_.end(), [](const Integer& z) { return z == 0; });
  if (all_zero) {
    num_.clear();
    den_ = 1;
    return;
  }
  if (den_ == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  Integer g = den_;
  for (const auto& z : num_) {
    if (g == 1) break;
    if (z != 0) g = gcd(g, z);
  }
  if (den_ < 0) g = -abs(g);
  if (g != 1) {
    for (auto& z : num_) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

bool FieldElement::is_one() const {
  if (num_.empty() || den_ != 1 || num_[0] != 1) return false;
  return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& z) { return z == 0; });
}

bool FieldElement::is_rational() const {
  if (num_.empty()) return true;
  return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& z) { return z == 0; });
}

Rational FieldElement::coefficient(int i) const {
  if (num_.empty() || i < 0 || i >= static_cast<int>(num_.size())) return 0;
  Rational q(num_[i], den_);
  q.canonicalize();
  return q;
}

std::vector<Rational> FieldElement::coefficients(const CyclotomicField& field) const {
  if (field_ != nullptr && field_ != &field) {
    throw Error(ErrorKind::FieldMismatch, "element of Q(zeta_" + std::to_string(field_->conductor()) +
                                              ") read in Q(zeta_" + std::to_string(field.conductor()) + ")");
  }
  std::vector<Rational> out(field.degree(), 0);
  for (std::size_t i = 0; i < num_.size(); ++i) out[i] = coefficient(static_cast<int>(i));
  return out;
}

std::vector<Rational> FieldElement::coefficients() const {
  if (field_ != nullptr) return coefficients(*field_);
  return {coefficient(0)};
}

Rational FieldElement::to_rational() const {
  if (!is_rational()) throw Error(ErrorKind::FieldMismatch, "element " + to_string() + " is not rational");
  return coefficient(0);
}

FieldElement FieldElement::in(const CyclotomicField& field) const {
  if (field_ == &field) return *this;
  if (field_ != nullptr) {
    throw Error(ErrorKind::FieldMismatch, "cannot move an element of Q(zeta_" + std::to_string(field_->conductor()) +
                                              ") into Q(zeta_" + std::to_string(field.conductor()) + ")");
  }
  FieldElement a = *this;
  a.field_ = &field;
  if (!a.num_.empty()) a.num_.resize(field.degree(), 0);
  return a;
}

const CyclotomicField* common_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() == nullptr) return b.field();
  if (b.field() == nullptr || a.field() == b.field()) return a.field();
  throw Error(ErrorKind::FieldMismatch, "Q(zeta_" + std::to_string(a.field()->conductor()) + ") vs Q(zeta_" +
                                            std::to_string(b.field()->conductor()) + ")");
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  const CyclotomicField* f = common_field(*this, other);
  if (other.is_zero()) {
    if (f != nullptr && field_ == nullptr) *this = in(*f);
    return *this;
  }
  if (is_zero()) {
    *this = f != nullptr ? other.in(*f) : other;
    return *this;
  }
  std::size_t n = f != nullptr ? static_cast<std::size_t>(f->degree()) : 1;
  num_.resize(n, 0);
  field_ = f;
  if (den_ == other.den_) {
    for (std::size_t i = 0; i < other.num_.size(); ++i) num_[i] += other.num_[i];
  } else {
    Integer g = gcd(den_, other.den_);
    Integer mine = other.den_ / g;
    Integer theirs = den_ / g;
    for (auto& z : num_) z *= mine;
    for (std::size_t i = 0; i < other.num_.size(); ++i) num_[i] += other.num_[i] * theirs;
    den_ *= mine;
  }
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) { return *this += -other; }

FieldElement FieldElement::operator-() const {
  FieldElement a = *this;
  for (auto& z : a.num_) z = -z;
  return a;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  const CyclotomicField* f = common_field(a, b);
  if (a.is_zero() || b.is_zero()) return f != nullptr ? FieldElement(*f, 0) : FieldElement();
  // Scalar fast paths: untagged constants and rational elements.
  if (a.num_.size() == 1 || b.is_rational()) {
    const FieldElement& big = a.num_.size() == 1 ? b : a;
    const FieldElement& small = a.num_.size() == 1 ? a : b;
    std::vector<Integer> num = big.num_;
    for (auto& z : num) z *= small.num_[0];
    FieldElement r = FieldElement::from_raw(big.field_, std::move(num), big.den_ * small.den_);
    return f != nullptr ? r.in(*f) : r;
  }
  if (a.is_rational()) return b * a;
  const long m = f->conductor();
  const int d = f->degree();
  std::vector<Integer> acc(m, 0);
  for (int i = 0; i < d; ++i) {
    if (a.num_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.num_[j] == 0) continue;
      long k = (i + j) % m;
      mpz_addmul(acc[k].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  std::vector<Integer> out(d, 0);
  for (long k = 0; k < m; ++k) {
    if (acc[k] == 0) continue;
    if (k < d) {
      out[k] += acc[k];
      continue;
    }
    const auto& zk = f->zeta_power(k);
    for (int i = 0; i < d; ++i) {
      if (zk[i] != 0) mpz_addmul(out[i].get_mpz_t(), acc[k].get_mpz_t(), zk[i].get_mpz_t());
    }
  }
  return FieldElement::from_raw(f, std::move(out), a.den_ * b.den_);
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  *this = *this * other;
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& other) {
  common_field(*this, other);
  *this = *this * other.inverse();
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (is_rational()) {
    Rational q = coefficient(0);
    FieldElement r(Rational(1) / q);
    return field_ != nullptr ? r.in(*field_) : r;
  }
  // a^{-1} = (product of the other conjugates) / N(a).
  FieldElement others(*field_, 1);
  for (long k : field_->galois_exponents()) {
    if (k == 1) continue;
    others *= apply_galois(k, *this);
  }
  FieldElement norm = *this * others;
  if (!norm.is_rational()) throw Error(ErrorKind::DivisionByZero, "norm computation failed for " + to_string());
  return others * FieldElement(Rational(1) / norm.coefficient(0));
}

FieldElement FieldElement::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FieldElement result = field_ != nullptr ? FieldElement(*field_, 1) : FieldElement(1);
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.field_ != nullptr && b.field_ != nullptr && a.field_ != b.field_) return false;
  if (a.num_.empty() || b.num_.empty()) return a.num_.empty() && b.num_.empty();
  if (a.den_ != b.den_) return false;
  const auto& longer = a.num_.size() >= b.num_.size() ? a.num_ : b.num_;
  const auto& shorter = a.num_.size() >= b.num_.size() ? b.num_ : a.num_;
  for (std::size_t i = 0; i < longer.size(); ++i) {
    const Integer zero = 0;
    const Integer& s = i < shorter.size() ? shorter[i] : zero;
    if (longer[i] != s) return false;
  }
  return true;
}

std::string FieldElement::to_string() const {
  if (num_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    Rational c = coefficient(static_cast<int>(i));
    if (c == 0) continue;
    bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.to_string(); }

// ---------------------------------------------------------------------------

FieldAut::FieldAut(const CyclotomicField& field, long exponent) : field_(&field) {
  long m = field.conductor();
  long k = exponent % m;
  if (k < 0) k += m;
  if (std::gcd(k, m) != 1) {
    throw Error(ErrorKind::NotAUnit, "Galois exponent " + std::to_string(exponent) + " is not a unit mod " +
                                         std::to_string(m));
  }
  exponent_ = k;
}

FieldAut FieldAut::compose(const FieldAut& other) const {
  if (field_ != other.field_) throw Error(ErrorKind::FieldMismatch, "composing automorphisms of different fields");
  return FieldAut(*field_, (exponent_ * other.exponent_) % field_->conductor());
}

FieldAut FieldAut::inverse() const {
  long m = field_->conductor();
  for (long k : field_->galois_exponents()) {
    if ((k * exponent_) % m == 1 % m) return FieldAut(*field_, k);
  }
  return *this;
}

FieldElement apply_galois(long exponent, const FieldElement& a) {
  const CyclotomicField* f = a.field();
  if (f == nullptr || a.is_zero() || a.is_rational()) return a;
  const long m = f->conductor();
  long k = exponent % m;
  if (k < 0) k += m;
  if (k == 1 % m) return a;
  const int d = f->degree();
  std::vector<Integer> out(d, 0);
  const auto& num = a.numerators();
  for (int j = 0; j < d; ++j) {
    if (num[j] == 0) continue;
    const auto& zk = f->zeta_power((k * j) % m);
    for (int i = 0; i < d; ++i) {
      if (zk[i] != 0) mpz_addmul(out[i].get_mpz_t(), num[j].get_mpz_t(), zk[i].get_mpz_t());
    }
  }
  return FieldElement::from_raw(f, std::move(out), a.denominator());
}

FieldElement apply_aut(const FieldAut& sigma, const FieldElement& a) {
  if (a.field() != nullptr && a.field() != &sigma.field()) {
    throw Error(ErrorKind::FieldMismatch, "automorphism and element live in different fields");
  }
  return apply_galois(sigma.exponent(), a.in(sigma.field()));
}

FieldElement root_of_unity(const CyclotomicField& field, long order) {
  const long m = field.conductor();
  if (order < 1 || field.root_order() % order != 0) {
    throw Error(ErrorKind::OrderNotSupported, "no primitive root of unity of order " + std::to_string(order) +
                                                  " in Q(zeta_" + std::to_string(m) + ")");
  }
  if (m % order == 0) return FieldElement::zeta(field, m / order);
  // m odd: zeta_{2m} = -zeta_m^{(m+1)/2}.
  FieldElement zeta2m = -FieldElement::zeta(field, (m + 1) / 2);
  return zeta2m.pow(2 * m / order);
}

long root_of_unity_order(const FieldElement& a) {
  if (a.is_zero()) return 0;
  const CyclotomicField* f = a.field();
  long n = f != nullptr ? f->root_order() : 2;
  FieldElement one = f != nullptr ? FieldElement(*f, 1) : FieldElement(1);
  if (a.pow(n) != one) return 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0 && a.pow(d) == one) return d;
  }
  return n;
}

namespace {

// Express `target` as a rational combination of `basis`, if possible.
bool solve_dependency(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& target,
                      std::vector<Rational>& coefficients) {
  const std::size_t rows = target.size();
  const std::size_t cols = basis.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = basis[c][r];
    m[r][cols] = target[r];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational factor = m[r][c];
      for (std::size_t k = c; k <= cols; ++k) m[r][k] -= factor * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (m[r][cols] != 0) return false;
  }
  coefficients.assign(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) coefficients[pivots[i]] = m[i][cols];
  return true;
}

}  // namespace

std::vector<Rational> minimal_polynomial(const FieldElement& a) {
  const CyclotomicField* f = a.field();
  const CyclotomicField& field = f != nullptr ? *f : CyclotomicField::get(1);
  std::vector<std::vector<Rational>> powers;
  FieldElement power(field, 1);
  for (int k = 0; k <= field.degree(); ++k) {
    std::vector<Rational> v = power.coefficients(field);
    std::vector<Rational> c;
    if (!powers.empty() && solve_dependency(powers, v, c)) {
      std::vector<Rational> poly(k + 1);
      for (int i = 0; i < k; ++i) poly[i] = -c[i];
      poly[k] = 1;
      return poly;
    }
    powers.push_back(std::move(v));
    power *= a.in(field);
  }
  throw Error(ErrorKind::DivisionByZero, "minimal polynomial search exceeded the field degree");
}

}  // namespace hecke
