#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mink {

/// Exact rational scalar. Default backend for every predicate: all decisions
/// reduce to sign tests over the rationals, so there is nothing to tune.
using Rational = mpq_class;

/// Relative tolerance used by the float64 backend. Two doubles are considered
/// equal when |a-b| <= tol * max(1, |a|, |b|).
inline constexpr double kDefaultTolerance = 1e-9;

enum class Errc {
  zero_vector,
  coincident_points,
  dimension_mismatch,
  degenerate_span,
  point_not_in_plane,
  not_light_like,
  non_intersecting,
  identical_lines,
  not_lorentz_plane,
  points_not_in_plane,
  not_pairwise_spacelike,
  radius_mismatch,
  non_positive_factor,
  off_center,
  light_like_pair,
  infeasible_exponent,
  not_on_hyperboloid,
  degenerate_configuration,
  not_a_hyperboloid,
  inconsistent_points,
  not_square,
  not_lorentz,
  not_conformal,
  norm_mismatch,
  not_timelike,
  not_in_extended_group,
  residual_not_identity,
  search_exhausted,
  inverse_inconsistent,
  unknown_suite,
  irrational_square_root,
  radicand_mismatch,
  parse_error,
};

class MinkError : public std::runtime_error {
 public:
  MinkError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw MinkError(code, msg);
}

inline Rational rat(long num, long den = 1) {
  if (den == 0) fail(Errc::parse_error, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p". Lowest terms are not required on input.
inline Rational rat(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0 || sgn(r.get_den()) == 0)
    fail(Errc::parse_error, "bad rational literal: '" + text + "'");
  r.canonicalize();
  return r;
}

/// 2^e as an exact rational, e of either sign.
inline Rational pow2q(int e) {
  mpz_class one = 1;
  if (e >= 0) return Rational(one << e);
  Rational r(one, one << (-e));
  r.canonicalize();
  return r;
}

inline Rational pow4q(int e) { return pow2q(2 * e); }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

/// sqrt(x) when x is a perfect rational square, otherwise nothing.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rational r(sn, sd);
  r.canonicalize();
  return r;
}

/// e such that r == 2^e, when the radius is an exact power of two.
inline std::optional<int> dyadic_exponent(const Rational& r) {
  if (sgn(r) <= 0) return std::nullopt;
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (mpz_popcount(num.get_mpz_t()) != 1 || mpz_popcount(den.get_mpz_t()) != 1)
    return std::nullopt;
  long a = mpz_scan1(num.get_mpz_t(), 0);
  long b = mpz_scan1(den.get_mpz_t(), 0);
  return static_cast<int>(a - b);
}

// --- backend comparison shims -----------------------------------------------
// Exact backends ignore the tolerance argument; the float64 backend applies
// the relative rule above.

inline bool approx_equal(double a, double b, double tol = kDefaultTolerance) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool scalar_equal(double a, double b, double tol = kDefaultTolerance) {
  return approx_equal(a, b, tol);
}
inline bool scalar_equal(const Rational& a, const Rational& b, double = 0) {
  return a == b;
}

inline int sign_of(double x, double tol = kDefaultTolerance) {
  if (approx_equal(x, 0.0, tol)) return 0;
  return x > 0 ? 1 : -1;
}
inline int sign_of(const Rational& x, double = 0) { return sgn(x); }

/// Element p + q*sqrt(B) of a real quadratic extension of the rationals.
///
/// The radicand B is carried per value. Perfect-square radicands fold into
/// the rational part on construction, so q != 0 implies sqrt(B) is
/// irrational and the norm p^2 - q^2 B vanishes only at zero. Values with
/// q == 0 are plain rationals and combine with any radicand; combining two
/// genuinely irrational values with different radicands is a logic error.
class QuadExt {
 public:
  QuadExt() : p_(0), q_(0), b_(0) {}
  QuadExt(const Rational& r) : p_(r), q_(0), b_(0) {}  // NOLINT(runtime/explicit)
  QuadExt(long n) : p_(rat(n)), q_(0), b_(0) {}        // NOLINT(runtime/explicit)
  QuadExt(int n) : p_(rat(n)), q_(0), b_(0) {}         // NOLINT(runtime/explicit)

  static QuadExt sqrt_of(const Rational& radicand) {
    if (sgn(radicand) < 0)
      fail(Errc::irrational_square_root, "sqrt of negative rational");
    if (auto s = exact_sqrt(radicand)) return QuadExt(*s);
    QuadExt x;
    x.q_ = 1;
    x.b_ = radicand;
    return x;
  }

  static QuadExt make(const Rational& p, const Rational& q,
                      const Rational& radicand) {
    return QuadExt(p) + QuadExt(q) * sqrt_of(radicand);
  }

  const Rational& rational_part() const { return p_; }
  const Rational& radical_part() const { return q_; }
  const Rational& radicand() const { return b_; }
  bool is_rational() const { return sgn(q_) == 0; }

  int sign() const {
    int sp = sgn(p_), sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    return sp * sgn(p_ * p_ - q_ * q_ * b_);
  }

  double to_double() const {
    return p_.get_d() + q_.get_d() * std::sqrt(b_.get_d());
  }

  friend QuadExt operator-(const QuadExt& a) {
    QuadExt r = a;
    r.p_ = -r.p_;
    r.q_ = -r.q_;
    return r;
  }
  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
    const Rational& rad = common_radicand(a, b);
    QuadExt r;
    r.p_ = a.p_ + b.p_;
    r.q_ = a.q_ + b.q_;
    r.b_ = sgn(r.q_) == 0 ? Rational(0) : rad;
    return r;
  }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) {
    return a + (-b);
  }
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    const Rational& rad = common_radicand(a, b);
    QuadExt r;
    r.p_ = a.p_ * b.p_ + a.q_ * b.q_ * rad;
    r.q_ = a.p_ * b.q_ + a.q_ * b.p_;
    r.b_ = sgn(r.q_) == 0 ? Rational(0) : rad;
    return r;
  }
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b) {
    if (b.sign() == 0) throw std::domain_error("QuadExt division by zero");
    // 1/(p+q*sqrt(B)) = (p-q*sqrt(B)) / (p^2 - q^2 B)
    Rational norm = b.p_ * b.p_ - b.q_ * b.q_ * b.b_;
    QuadExt conj = b;
    conj.q_ = -conj.q_;
    QuadExt num = a * conj;
    num.p_ /= norm;
    num.q_ /= norm;
    return num;
  }

  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

  friend bool operator==(const QuadExt& a, const QuadExt& b) {
    return (a - b).sign() == 0;
  }
  friend bool operator!=(const QuadExt& a, const QuadExt& b) {
    return !(a == b);
  }
  friend bool operator<(const QuadExt& a, const QuadExt& b) {
    return (a - b).sign() < 0;
  }
  friend bool operator>(const QuadExt& a, const QuadExt& b) { return b < a; }
  friend bool operator<=(const QuadExt& a, const QuadExt& b) {
    return !(b < a);
  }
  friend bool operator>=(const QuadExt& a, const QuadExt& b) {
    return !(a < b);
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
    os << x.p_;
    if (sgn(x.q_) != 0) os << (sgn(x.q_) > 0 ? "+" : "") << x.q_ << "*sqrt(" << x.b_ << ")";
    return os;
  }

 private:
  static const Rational& common_radicand(const QuadExt& a, const QuadExt& b) {
    if (sgn(a.q_) == 0) return b.b_;
    if (sgn(b.q_) == 0) return a.b_;
    if (a.b_ != b.b_)
      fail(Errc::radicand_mismatch, "mixing distinct quadratic extensions");
    return a.b_;
  }

  Rational p_, q_, b_;
};

inline QuadExt abs(const QuadExt& x) { return x.sign() < 0 ? -x : x; }

inline bool scalar_equal(const QuadExt& a, const QuadExt& b, double = 0) {
  return a == b;
}
inline int sign_of(const QuadExt& x, double = 0) { return x.sign(); }
inline double to_double(const QuadExt& x) { return x.to_double(); }

/// Converts an exact rational into the scalar type of the target backend.
template <class S>
S from_rational(const Rational& x);
template <>
inline Rational from_rational<Rational>(const Rational& x) {
  return x;
}
template <>
inline double from_rational<double>(const Rational& x) {
  return x.get_d();
}
template <>
inline QuadExt from_rational<QuadExt>(const Rational& x) {
  return QuadExt(x);
}

template <class S>
struct ScalarName;
template <>
struct ScalarName<Rational> {
  static constexpr const char* value = "rational";
};
template <>
struct ScalarName<double> {
  static constexpr const char* value = "float64";
};
template <>
struct ScalarName<QuadExt> {
  static constexpr const char* value = "quadratic";
};

}  // namespace mink

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = long;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

template <>
struct NumTraits<mink::QuadExt> : GenericNumTraits<mink::QuadExt> {
  using Real = mink::QuadExt;
  using NonInteger = mink::QuadExt;
  using Nested = mink::QuadExt;
  using Literal = long;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 300,
    MulCost = 300
  };
};

}  // namespace Eigen
