#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mink/scalar.hpp"

namespace mink {

using Index = Eigen::Index;

/// Space-time points, vectors and matrices are dense Eigen types over the
/// chosen scalar backend. Component 0 is the time coordinate, components
/// 1..n the space coordinates.
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

enum class CausalClass { Spacelike, Lightlike, Timelike };
enum class Orientation { Forward, Backward };
enum class IntersectionCardinality { Empty, Singleton, Pair, Infinite };
enum class TransformClass {
  Lorentz,
  OrthochronousLorentz,
  Poincare,
  OrthochronousPoincare,
  LorentzDilation,
  PoincareDilation,
  AffineOther,
};

inline const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "SPACELIKE";
    case CausalClass::Lightlike: return "LIGHTLIKE";
    case CausalClass::Timelike: return "TIMELIKE";
  }
  return "?";
}

inline const char* to_string(Orientation o) {
  return o == Orientation::Forward ? "FORWARD" : "BACKWARD";
}

inline const char* to_string(IntersectionCardinality c) {
  switch (c) {
    case IntersectionCardinality::Empty: return "EMPTY";
    case IntersectionCardinality::Singleton: return "SINGLETON";
    case IntersectionCardinality::Pair: return "PAIR";
    case IntersectionCardinality::Infinite: return "INFINITE";
  }
  return "?";
}

inline const char* to_string(TransformClass c) {
  switch (c) {
    case TransformClass::Lorentz: return "LORENTZ";
    case TransformClass::OrthochronousLorentz: return "ORTHOCHRONOUS_LORENTZ";
    case TransformClass::Poincare: return "POINCARE";
    case TransformClass::OrthochronousPoincare:
      return "ORTHOCHRONOUS_POINCARE";
    case TransformClass::LorentzDilation: return "LORENTZ_DILATION";
    case TransformClass::PoincareDilation: return "POINCARE_DILATION";
    case TransformClass::AffineOther: return "AFFINE_OTHER";
  }
  return "?";
}

/// Affine line {base + s * direction}. Equal lines may be stored with
/// different representatives; use canonical_line/lines_equal for identity.
template <class S>
struct Line {
  Vec<S> base;
  Vec<S> direction;
};

/// Affine 2-flat {base + s*d1 + u*d2} with d1, d2 independent.
template <class S>
struct PlaneSpan {
  Vec<S> base;
  Vec<S> d1;
  Vec<S> d2;
};

/// {p : eta(p - base, light_direction) = 0} for a light-like direction.
template <class S>
struct RobbHyperplane {
  Vec<S> base;
  Vec<S> light_direction;
};

/// {p : Q(p - apex) = 0}.
template <class S>
struct LightCone {
  Vec<S> apex;
};

/// {p : Q(p - center) = radius^2}, radius > 0.
template <class S>
struct Hyperboloid {
  Vec<S> center;
  S radius;
};

/// One connected component of a hyperboloid. Forward shells have time
/// projection bounded below, backward shells bounded above.
template <class S>
struct Shell {
  Vec<S> center;
  S radius;
  Orientation orientation = Orientation::Forward;
  std::optional<int> standard_exponent;  // e when radius == 2^e exactly

  Hyperboloid<S> hyperboloid() const { return {center, radius}; }
};

/// p -> A p + b with A nonsingular.
template <class S>
struct AffineMap {
  Mat<S> A;
  Vec<S> b;

  Index dim() const { return b.size(); }

  static AffineMap identity(Index d) {
    return {Mat<S>::Identity(d, d), Vec<S>::Zero(d)};
  }
};

/// Factors of rho . delta . lambda . tau . f = identity, i.e.
/// f = tau^-1 lambda^-1 delta^-1 rho^-1. tau translates by -f(0), lambda is
/// Lorentz, delta scales by 1/a with a > 0, rho fixes (1,0) and rotates or
/// reflects space.
template <class S>
struct Decomposition {
  Vec<S> tau;
  Mat<S> lambda;
  S a;
  Mat<S> rho;
};

// --- small vector helpers ----------------------------------------------------

template <class S>
Vec<S> make_vec(std::initializer_list<S> xs) {
  Vec<S> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline Vec<Rational> rvec(std::initializer_list<long> xs) {
  Vec<Rational> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v(i++) = rat(x);
  return v;
}

template <class S>
void check_same_dim(const Vec<S>& u, const Vec<S>& v) {
  if (u.size() != v.size())
    fail(Errc::dimension_mismatch, "operands have different dimensions");
}

template <class S>
bool vec_is_zero(const Vec<S>& v, double tol = kDefaultTolerance) {
  for (Index i = 0; i < v.size(); ++i)
    if (sign_of(v(i), tol) != 0) return false;
  return true;
}

template <class S>
bool vec_equal(const Vec<S>& u, const Vec<S>& v,
               double tol = kDefaultTolerance) {
  if (u.size() != v.size()) return false;
  for (Index i = 0; i < u.size(); ++i)
    if (!scalar_equal(u(i), v(i), tol)) return false;
  return true;
}

template <class S>
bool mat_equal(const Mat<S>& a, const Mat<S>& b,
               double tol = kDefaultTolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!scalar_equal(a(i, j), b(i, j), tol)) return false;
  return true;
}

template <class From, class To>
Vec<To> convert_vec(const Vec<From>& v) {
  Vec<To> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = from_rational<To>(v(i));
  return out;
}

inline Vec<double> to_double_vec(const Vec<Rational>& v) {
  Vec<double> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = v(i).get_d();
  return out;
}

inline Vec<double> to_double_vec(const Vec<QuadExt>& v) {
  Vec<double> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
  return out;
}

inline Vec<double> to_double_vec(const Vec<double>& v) { return v; }

inline Mat<double> to_double_mat(const Mat<Rational>& m) {
  Mat<double> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

inline Mat<double> to_double_mat(const Mat<double>& m) { return m; }

inline AffineMap<double> to_double_map(const AffineMap<Rational>& f) {
  return {to_double_mat(f.A), to_double_vec(f.b)};
}

/// Scalar type in which square-root-requiring constructions are delivered:
/// the rational backend widens to its quadratic extension, float64 stays put.
template <class S>
struct WitnessScalarT {
  using type = S;
};
template <>
struct WitnessScalarT<Rational> {
  using type = QuadExt;
};
template <class S>
using witness_scalar_t = typename WitnessScalarT<S>::type;

template <class S>
witness_scalar_t<S> witness_sqrt(const S& x);
template <>
inline QuadExt witness_sqrt<Rational>(const Rational& x) {
  return QuadExt::sqrt_of(x);
}
template <>
inline double witness_sqrt<double>(const double& x) {
  if (x < 0) fail(Errc::irrational_square_root, "sqrt of negative value");
  return std::sqrt(x);
}

template <class S>
Vec<witness_scalar_t<S>> widen_vec(const Vec<S>& v) {
  if constexpr (std::is_same_v<S, witness_scalar_t<S>>) {
    return v;
  } else {
    Vec<witness_scalar_t<S>> out(v.size());
    for (Index i = 0; i < v.size(); ++i)
      out(i) = witness_scalar_t<S>(v(i));
    return out;
  }
}

}  // namespace mink
