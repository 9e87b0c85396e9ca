#pragma once

#include <optional>
#include <string>
#include <utility>

#include "mink/core.hpp"

namespace mink {

/// diag(1, -1, ..., -1); A^T eta A = eta characterizes Lorentz matrices.
template <class S>
Mat<S> eta_matrix(Index dim) {
  Mat<S> m = Mat<S>::Zero(dim, dim);
  m(0, 0) = S(1);
  for (Index i = 1; i < dim; ++i) m(i, i) = S(-1);
  return m;
}

template <class S>
void check_square(const Mat<S>& a) {
  if (a.rows() != a.cols() || a.rows() < 2)
    fail(Errc::not_square, "matrix must be square of dimension n+1");
}

template <class S>
bool is_lorentz(const Mat<S>& a, double tol = kDefaultTolerance) {
  check_square(a);
  Mat<S> g = a.transpose() * eta_matrix<S>(a.rows()) * a;
  return mat_equal(g, eta_matrix<S>(a.rows()), tol);
}

template <class S>
bool is_orthochronous(const Mat<S>& a, double tol = kDefaultTolerance) {
  if (!is_lorentz(a, tol))
    fail(Errc::not_lorentz, "orthochronicity is defined for Lorentz matrices");
  return sign_of(a(0, 0), tol) > 0;
}

/// a^2 such that A^T eta A = a^2 eta, when A is conformal with positive
/// factor.
template <class S>
std::optional<S> conformal_factor_squared(const Mat<S>& a,
                                          double tol = kDefaultTolerance) {
  check_square(a);
  const Index dim = a.rows();
  Mat<S> g = a.transpose() * eta_matrix<S>(dim) * a;
  S a2 = g(0, 0);
  if (sign_of(a2, tol) <= 0) return std::nullopt;
  if (!mat_equal(g, Mat<S>(a2 * eta_matrix<S>(dim)), tol)) return std::nullopt;
  return a2;
}

template <class S>
struct DilationFactor {
  S a;
  Mat<S> lambda;
};

/// Unique factorization A = a * Lambda with a > 0 and Lambda Lorentz.
template <class S>
DilationFactor<S> factor_dilation(const Mat<S>& a,
                                  double tol = kDefaultTolerance) {
  auto a2 = conformal_factor_squared(a, tol);
  if (!a2)
    fail(Errc::not_conformal,
         "A^T eta A is not a positive multiple of eta");
  S factor;
  if constexpr (std::is_same_v<S, Rational>) {
    auto r = exact_sqrt(*a2);
    if (!r)
      fail(Errc::irrational_square_root,
           "conformal factor is irrational over the rational backend");
    factor = *r;
  } else {
    factor = std::sqrt(*a2);
  }
  return DilationFactor<S>{factor, Mat<S>(a / factor)};
}

/// Pure boost taking a time-like u to (s, 0, ..., 0) with s = sign(t_u)
/// sqrt(Q(u)). Entries are rational whenever sqrt(Q(u)) is.
template <class S>
Mat<S> boost_to_rest(const Vec<S>& u, double tol = kDefaultTolerance) {
  const Index dim = u.size();
  if (vec_is_zero(u, tol) ||
      classify_vector(u, tol) != CausalClass::Timelike)
    fail(Errc::not_timelike, "boost_to_rest needs a time-like vector");
  S q = quadratic_form(u);
  S norm;
  if constexpr (std::is_same_v<S, Rational>) {
    auto r = exact_sqrt(q);
    if (!r)
      fail(Errc::irrational_square_root,
           "sqrt(Q(u)) is irrational over the rational backend");
    norm = *r;
  } else {
    norm = std::sqrt(q);
  }
  int st = sign_of(u(0), tol);
  Vec<S> nu = u / (st > 0 ? norm : S(-norm));  // future unit vector
  S gamma = nu(0);
  Mat<S> b = Mat<S>::Zero(dim, dim);
  b(0, 0) = gamma;
  for (Index i = 1; i < dim; ++i) {
    b(0, i) = -nu(i);
    b(i, 0) = -nu(i);
    for (Index j = 1; j < dim; ++j) {
      b(i, j) = (i == j ? S(1) : S(0)) + nu(i) * nu(j) / (S(1) + gamma);
    }
  }
  return b;
}

/// Orthogonal block diag(1, R) with R x = y for equal-length spatial
/// vectors, built from at most two Householder reflections; identity on the
/// orthogonal complement of span{x, y}. Entries stay rational.
template <class S>
Mat<S> rotation_aligning(const Vec<S>& x, const Vec<S>& y,
                         double tol = kDefaultTolerance) {
  check_same_dim(x, y);
  const Index n = x.size();
  if (vec_is_zero(x, tol) || vec_is_zero(y, tol))
    fail(Errc::zero_vector, "cannot align a zero vector");
  S nx = S(0), ny = S(0);
  for (Index i = 0; i < n; ++i) {
    nx += x(i) * x(i);
    ny += y(i) * y(i);
  }
  if (!scalar_equal(nx, ny, tol))
    fail(Errc::norm_mismatch, "vectors must have equal Euclidean length");
  auto householder = [&](const Vec<S>& v) {
    S vv = S(0);
    for (Index i = 0; i < n; ++i) vv += v(i) * v(i);
    Mat<S> h = Mat<S>::Identity(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) h(i, j) -= S(2) * v(i) * v(j) / vv;
    return h;
  };
  Mat<S> r;
  if (vec_equal(x, y, tol)) {
    r = Mat<S>::Identity(n, n);
  } else if (vec_is_zero(Vec<S>(x + y), tol)) {
    r = householder(x);  // maps x to -x = y
  } else {
    r = householder(Vec<S>(x + y)) * householder(x);
  }
  Mat<S> block = Mat<S>::Zero(n + 1, n + 1);
  block(0, 0) = S(1);
  block.block(1, 1, n, n) = r;
  return block;
}

// --- affine maps ---------------------------------------------------------------

template <class S>
AffineMap<S> make_affine(Mat<S> a, Vec<S> b, double tol = kDefaultTolerance) {
  check_square(a);
  if (a.rows() != b.size())
    fail(Errc::dimension_mismatch, "matrix and translation disagree");
  Eigen::FullPivLU<Mat<S>> lu(a);
  if constexpr (std::is_same_v<S, double>) lu.setThreshold(tol);
  if (lu.rank() < a.rows())
    fail(Errc::degenerate_configuration, "affine map must be nonsingular");
  return AffineMap<S>{std::move(a), std::move(b)};
}

template <class S>
Vec<S> apply(const AffineMap<S>& f, const Vec<S>& p) {
  if (p.size() != f.dim())
    fail(Errc::dimension_mismatch, "point dimension mismatch");
  return f.A * p + f.b;
}

/// compose(f, g) acts as f after g.
template <class S>
AffineMap<S> compose(const AffineMap<S>& f, const AffineMap<S>& g) {
  if (f.dim() != g.dim())
    fail(Errc::dimension_mismatch, "composition dimension mismatch");
  return AffineMap<S>{Mat<S>(f.A * g.A), Vec<S>(f.A * g.b + f.b)};
}

template <class S>
AffineMap<S> inverse(const AffineMap<S>& f) {
  Eigen::FullPivLU<Mat<S>> lu(f.A);
  Mat<S> ainv = lu.inverse();
  return AffineMap<S>{ainv, Vec<S>(-(ainv * f.b))};
}

template <class S>
AffineMap<S> translation_map(const Vec<S>& c) {
  return AffineMap<S>{Mat<S>::Identity(c.size(), c.size()), c};
}

template <class S>
AffineMap<S> linear_map(const Mat<S>& a) {
  return AffineMap<S>{a, Vec<S>::Zero(a.rows())};
}

template <class S>
TransformClass classify_transform(const AffineMap<S>& f,
                                  double tol = kDefaultTolerance) {
  bool pure_linear = vec_is_zero(f.b, tol);
  if (is_lorentz(f.A, tol)) {
    bool orth = sign_of(f.A(0, 0), tol) > 0;
    if (pure_linear)
      return orth ? TransformClass::OrthochronousLorentz
                  : TransformClass::Lorentz;
    return orth ? TransformClass::OrthochronousPoincare
                : TransformClass::Poincare;
  }
  auto a2 = conformal_factor_squared(f.A, tol);
  if (a2)
    return pure_linear ? TransformClass::LorentzDilation
                       : TransformClass::PoincareDilation;
  return TransformClass::AffineOther;
}

/// Factors f through rho . delta . lambda . tau . f = identity. tau kills
/// the translation, factor_dilation splits off the dilation, lambda boosts
/// the image of (1, 0) back to the time axis (absorbing any time reversal),
/// and rho is the leftover spatial orthogonal block.
template <class S>
Decomposition<S> decompose(const AffineMap<S>& f,
                           double tol = kDefaultTolerance) {
  const Index dim = f.dim();
  DilationFactor<S> df;
  try {
    df = factor_dilation(f.A, tol);
  } catch (const MinkError& e) {
    if (e.code() == Errc::not_conformal)
      fail(Errc::not_in_extended_group,
           "linear part is not Lorentz-conformal: " + std::string(e.what()));
    throw;
  }
  Vec<S> u = f.A.col(0);  // image of (1, 0, ..., 0) under the linear part
  Mat<S> lambda = boost_to_rest(u, tol);
  if (sign_of(u(0), tol) < 0) {
    // fold the time reversal into the lambda stage
    Mat<S> t = Mat<S>::Identity(dim, dim);
    t(0, 0) = S(-1);
    lambda = t * lambda;
  }
  Mat<S> h = lambda * f.A / df.a;  // Lorentz, fixes (1, 0, ..., 0)
  // A Lorentz matrix fixing the time axis is block diag(1, R).
  Mat<S> rho = eta_matrix<S>(dim) * h.transpose() * eta_matrix<S>(dim);
  Decomposition<S> out{Vec<S>(-f.b), lambda, df.a, rho};
  // verification: rho . delta . lambda . tau . f == identity
  AffineMap<S> total = compose(
      linear_map(rho),
      compose(linear_map(Mat<S>(Mat<S>::Identity(dim, dim) / df.a)),
              compose(linear_map(lambda),
                      compose(translation_map(out.tau), f))));
  if (!mat_equal(total.A, Mat<S>(Mat<S>::Identity(dim, dim)), tol) ||
      !vec_is_zero(total.b, tol))
    fail(Errc::residual_not_identity,
         "decomposition failed to recompose to the identity");
  for (Index i = 1; i < dim; ++i)
    if (sign_of(rho(0, i), tol) != 0 || sign_of(rho(i, 0), tol) != 0)
      fail(Errc::residual_not_identity, "rho does not fix the rest hyperplane");
  return out;
}

/// f = tau^-1 lambda^-1 delta^-1 rho^-1, for checking round trips.
template <class S>
AffineMap<S> recompose(const Decomposition<S>& d) {
  const Index dim = d.tau.size();
  AffineMap<S> tau_inv = translation_map(Vec<S>(-d.tau));
  AffineMap<S> lambda_inv =
      linear_map(Mat<S>(eta_matrix<S>(dim) * d.lambda.transpose() *
                        eta_matrix<S>(dim)));
  AffineMap<S> delta_inv = linear_map(Mat<S>(Mat<S>::Identity(dim, dim) * d.a));
  AffineMap<S> rho_inv = linear_map(Mat<S>(d.rho.transpose()));
  return compose(tau_inv, compose(lambda_inv, compose(delta_inv, rho_inv)));
}

}  // namespace mink
