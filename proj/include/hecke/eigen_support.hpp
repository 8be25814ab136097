#pragma once

// Lets Eigen's dense containers hold exact scalars. Only storage, coefficient
// access and the generic (non-vectorized) product kernels are used with these
// types; decompositions live in linalg.hpp.

#include <Eigen/Core>

#include "hecke/cyclotomic.hpp"
#include "hecke/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<hecke::Rational> : GenericNumTraits<hecke::Rational> {
  typedef hecke::Rational Real;
  typedef hecke::Rational NonInteger;
  typedef hecke::Rational Nested;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<hecke::Integer> : GenericNumTraits<hecke::Integer> {
  typedef hecke::Integer Real;
  typedef hecke::Rational NonInteger;
  typedef hecke::Integer Nested;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 50,
    MulCost = 50
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<hecke::FieldElement> : GenericNumTraits<hecke::FieldElement> {
  typedef hecke::FieldElement Real;
  typedef hecke::FieldElement NonInteger;
  typedef hecke::FieldElement Nested;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 500,
    MulCost = 5000
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace hecke {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using FieldMatrix = Matrix<FieldElement>;
using FieldVector = Vector<FieldElement>;
using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;
using IntegerVector = Vector<Integer>;

// Eigen's generic code calls these unqualified for scalar types.
inline const FieldElement& conj(const FieldElement& x) { return x; }
inline const FieldElement& real(const FieldElement& x) { return x; }
inline FieldElement imag(const FieldElement&) { return FieldElement(); }
inline FieldElement abs2(const FieldElement& x) { return x * x; }

}  // namespace hecke
