#include "hecke/polynomial.hpp"

#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

void trim(FieldPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

long degree(const FieldPoly& p) {
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) {
    if (!p[i].is_zero()) return i;
  }
  return -1;
}

FieldPoly poly_add(const FieldPoly& a, const FieldPoly& b) {
  FieldPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] += b[i];
  }
  trim(out);
  return out;
}

FieldPoly poly_sub(const FieldPoly& a, const FieldPoly& b) { return poly_add(a, poly_scale(b, FieldElement(-1))); }

FieldPoly poly_mul(const FieldPoly& a, const FieldPoly& b) {
  if (a.empty() || b.empty()) return {};
  FieldPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
  }
  trim(out);
  return out;
}

FieldPoly poly_scale(const FieldPoly& a, const FieldElement& c) {
  FieldPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  trim(out);
  return out;
}

void poly_divmod(const FieldPoly& a, const FieldPoly& b, FieldPoly& q, FieldPoly& r) {
  const long db = degree(b);
  if (db < 0) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  r = a;
  trim(r);
  q.clear();
  if (degree(r) < db) return;
  q.assign(r.size() - db, FieldElement());
  FieldElement lead_inv = b[db].inverse();
  for (long i = degree(r); i >= db; --i) {
    if (r[i].is_zero()) continue;
    FieldElement c = r[i] * lead_inv;
    q[i - db] = c;
    for (long j = 0; j <= db; ++j) {
      if (!b[j].is_zero()) r[i - db + j] -= c * b[j];
    }
  }
  trim(q);
  trim(r);
}

FieldPoly make_monic(FieldPoly p) {
  trim(p);
  if (p.empty()) return p;
  FieldElement inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

FieldPoly poly_gcd(FieldPoly a, FieldPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FieldPoly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

FieldPoly derivative(const FieldPoly& p) {
  if (p.size() <= 1) return {};
  FieldPoly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * FieldElement(static_cast<long>(i));
  trim(out);
  return out;
}

FieldPoly squarefree_part(const FieldPoly& p) {
  FieldPoly g = poly_gcd(p, derivative(p));
  FieldPoly q, r;
  poly_divmod(p, g, q, r);
  return make_monic(q);
}

FieldElement evaluate(const FieldPoly& p, const FieldElement& x) {
  FieldElement acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

FieldPoly from_roots(const std::vector<FieldElement>& roots) {
  FieldPoly out{FieldElement(1)};
  for (const auto& r : roots) out = poly_mul(out, FieldPoly{-r, FieldElement(1)});
  return out;
}

FieldPoly from_rationals(const std::vector<Rational>& coefficients) {
  FieldPoly out;
  for (const auto& c : coefficients) out.emplace_back(c);
  trim(out);
  return out;
}

std::string poly_to_string(const FieldPoly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << p[i] << ")";
    if (i > 0) os << "*x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace hecke
