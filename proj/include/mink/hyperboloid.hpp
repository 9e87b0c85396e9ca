#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mink/core.hpp"

namespace mink {

template <class S>
bool on_hyperboloid(const Hyperboloid<S>& h, const Vec<S>& p,
                    double tol = kDefaultTolerance) {
  check_same_dim(h.center, p);
  return scalar_equal(quadratic_form(Vec<S>(p - h.center)),
                      S(h.radius * h.radius), tol);
}

template <class S>
bool on_shell(const Shell<S>& shell, const Vec<S>& p,
              double tol = kDefaultTolerance) {
  if (!on_hyperboloid(shell.hyperboloid(), p, tol)) return false;
  int s = sign_of(S(p(0) - shell.center(0)), tol);
  return shell.orientation == Orientation::Forward ? s > 0 : s < 0;
}

template <class S>
Shell<S> make_shell(Vec<S> center, S radius, Orientation orientation) {
  if (sign_of(radius) <= 0)
    fail(Errc::not_a_hyperboloid, "shell radius must be positive");
  Shell<S> s{std::move(center), std::move(radius), orientation, {}};
  if constexpr (std::is_same_v<S, Rational>)
    s.standard_exponent = dyadic_exponent(s.radius);
  return s;
}

/// The component of h through p.
template <class S>
Shell<S> shell_through(const Hyperboloid<S>& h, const Vec<S>& p,
                       double tol = kDefaultTolerance) {
  if (!on_hyperboloid(h, p, tol))
    fail(Errc::not_on_hyperboloid, "point is not on the hyperboloid");
  int s = sign_of(S(p(0) - h.center(0)), tol);
  return make_shell(h.center, h.radius,
                    s > 0 ? Orientation::Forward : Orientation::Backward);
}

/// m H(0,r) = H(0, m r); only claimed for center 0.
template <class S>
Hyperboloid<S> dilate(const Hyperboloid<S>& h, const S& m,
                      double tol = kDefaultTolerance) {
  if (sign_of(m, tol) <= 0)
    fail(Errc::non_positive_factor, "dilation factor must be positive");
  if (!vec_is_zero(h.center, tol))
    fail(Errc::off_center, "dilation identity requires center 0");
  return Hyperboloid<S>{h.center, S(m * h.radius)};
}

namespace detail {

/// Exact decisions about one-variable quadratics on open intervals with
/// optional endpoints. Everything is sign tests in the scalar field, no
/// square roots are taken.
template <class S>
struct OpenInterval {
  std::optional<S> lo, hi;

  bool empty(double tol) const {
    return lo && hi && sign_of(S(*hi - *lo), tol) <= 0;
  }
  bool contains(const S& y, double tol) const {
    if (lo && sign_of(S(y - *lo), tol) <= 0) return false;
    if (hi && sign_of(S(*hi - y), tol) <= 0) return false;
    return true;
  }
  void add_lower(const S& b, double tol) {
    if (!lo || sign_of(S(b - *lo), tol) > 0) lo = b;
  }
  void add_upper(const S& b, double tol) {
    if (!hi || sign_of(S(*hi - b), tol) > 0) hi = b;
  }
};

template <class S>
S eval_quadratic(const S& c2, const S& c1, const S& c0, const S& y) {
  return c2 * y * y + c1 * y + c0;
}

/// Whether c2 y^2 + c1 y + c0 >= 0 somewhere on the open interval.
template <class S>
bool quadratic_attains_nonneg_on(const S& c2, const S& c1, const S& c0,
                                 const OpenInterval<S>& iv, double tol) {
  if (iv.empty(tol)) return false;
  auto F = [&](const S& y) { return eval_quadratic(c2, c1, c0, y); };
  int s2 = sign_of(c2, tol);
  if (s2 == 0) {
    int s1 = sign_of(c1, tol);
    if (s1 == 0) return sign_of(c0, tol) >= 0;
    // Linear and open: the supremum end decides, and is not attained.
    if (s1 > 0) return !iv.hi || sign_of(F(*iv.hi), tol) > 0;
    return !iv.lo || sign_of(F(*iv.lo), tol) > 0;
  }
  if (s2 > 0) {
    if (!iv.lo || !iv.hi) return true;
    return sign_of(F(*iv.lo), tol) > 0 || sign_of(F(*iv.hi), tol) > 0;
  }
  // Downward parabola: F >= 0 exactly on the root interval [r-, r+].
  S disc = c1 * c1 - S(4) * c2 * c0;
  int sd = sign_of(disc, tol);
  if (sd < 0) return false;
  S vertex = -c1 / (S(2) * c2);
  if (sd == 0) return iv.contains(vertex, tol);
  // r- < hi  <=>  not (hi <= vertex and F(hi) <= 0)
  bool rm_lt_hi = !iv.hi || !(sign_of(S(vertex - *iv.hi), tol) >= 0 &&
                              sign_of(F(*iv.hi), tol) <= 0);
  // lo < r+  <=>  not (lo >= vertex and F(lo) <= 0)
  bool lo_lt_rp = !iv.lo || !(sign_of(S(*iv.lo - vertex), tol) >= 0 &&
                              sign_of(F(*iv.lo), tol) <= 0);
  return rm_lt_hi && lo_lt_rp;
}

/// Whether c2 y^2 + c1 y + c0 has a root on the open interval.
template <class S>
bool quadratic_has_root_on(S c2, S c1, S c0, const OpenInterval<S>& iv,
                           double tol) {
  if (iv.empty(tol)) return false;
  if (sign_of(c2, tol) == 0) {
    if (sign_of(c1, tol) == 0) return sign_of(c0, tol) == 0;
    return iv.contains(S(-c0 / c1), tol);
  }
  if (sign_of(c2, tol) < 0) {
    c2 = -c2;
    c1 = -c1;
    c0 = -c0;
  }
  auto F = [&](const S& y) { return eval_quadratic(c2, c1, c0, y); };
  S disc = c1 * c1 - S(4) * c2 * c0;
  int sd = sign_of(disc, tol);
  if (sd < 0) return false;
  S vertex = -c1 / (S(2) * c2);
  if (sd == 0) return iv.contains(vertex, tol);
  // Upward parabola with two roots r- < vertex < r+.
  // lo < r-  <=>  lo unbounded, or F(lo) > 0 with lo left of the vertex.
  bool lo_lt_rm =
      !iv.lo || (sign_of(F(*iv.lo), tol) > 0 &&
                 sign_of(S(vertex - *iv.lo), tol) > 0);
  // r- < hi  <=>  hi unbounded, or not (F(hi) >= 0 with hi left of vertex).
  bool rm_lt_hi = !iv.hi || !(sign_of(F(*iv.hi), tol) >= 0 &&
                              sign_of(S(vertex - *iv.hi), tol) > 0);
  if (lo_lt_rm && rm_lt_hi) return true;
  bool lo_lt_rp = !iv.lo || !(sign_of(F(*iv.lo), tol) >= 0 &&
                              sign_of(S(*iv.lo - vertex), tol) > 0);
  bool rp_lt_hi =
      !iv.hi || (sign_of(F(*iv.hi), tol) > 0 &&
                 sign_of(S(*iv.hi - vertex), tol) > 0);
  return lo_lt_rp && rp_lt_hi;
}

}  // namespace detail

/// Cardinality of H(cA, rA) meet H(cB, rB), radii unrestricted. Members
/// satisfy the linear condition 2 eta(p - cA, d) = Q(d) + rA^2 - rB^2 with
/// d = cB - cA, which reduces the intersection to a sphere whose squared
/// radius has computable sign.
template <class S>
IntersectionCardinality intersect_hyperboloids(const Hyperboloid<S>& a,
                                               const Hyperboloid<S>& b,
                                               double tol = kDefaultTolerance) {
  check_same_dim(a.center, b.center);
  const int n = static_cast<int>(a.center.size()) - 1;
  Vec<S> d = b.center - a.center;
  S ra2 = a.radius * a.radius, rb2 = b.radius * b.radius;
  if (vec_is_zero(d, tol))
    return scalar_equal(ra2, rb2, tol) ? IntersectionCardinality::Infinite
                                       : IntersectionCardinality::Empty;
  S q = quadratic_form(d);
  S mu = q + ra2 - rb2;
  int sq = sign_of(q, tol);
  if (sq > 0) {
    // Time-like displacement: fixed t slice, sphere radius^2 proportional
    // to mu^2 - 4 q rA^2.
    int s = sign_of(S(mu * mu - S(4) * q * ra2), tol);
    if (s < 0) return IntersectionCardinality::Empty;
    if (s == 0) return IntersectionCardinality::Singleton;
    return n == 1 ? IntersectionCardinality::Pair
                  : IntersectionCardinality::Infinite;
  }
  if (sq < 0) {
    // Space-like displacement: fixed spatial slice, residual hyperboloid of
    // strictly positive radius.
    return n == 1 ? IntersectionCardinality::Pair
                  : IntersectionCardinality::Infinite;
  }
  // Light-like displacement: the linear condition degenerates.
  if (sign_of(mu, tol) == 0) return IntersectionCardinality::Empty;
  return n == 1 ? IntersectionCardinality::Singleton
                : IntersectionCardinality::Infinite;
}

template <class S>
IntersectionCardinality intersect_same_radius(const Hyperboloid<S>& a,
                                              const Hyperboloid<S>& b,
                                              double tol = kDefaultTolerance) {
  if (!scalar_equal(a.radius, b.radius, tol))
    fail(Errc::radius_mismatch, "hyperboloids must share one radius");
  return intersect_hyperboloids(a, b, tol);
}

/// True iff H(v,r) meets H(0,r) in exactly one point, i.e. Q(v) = 4 r^2.
template <class S>
bool singleton_locus_check(const Vec<S>& v, const S& r,
                           double tol = kDefaultTolerance) {
  Hyperboloid<S> origin{Vec<S>::Zero(v.size()), r};
  Hyperboloid<S> moved{v, r};
  return intersect_same_radius(origin, moved, tol) ==
         IntersectionCardinality::Singleton;
}

namespace detail {

/// Time-like (for space-like d) or space-like (for time-like d) rational
/// direction eta-orthogonal to d: the eta-projection of a coordinate axis
/// onto the complement of d. Never needs a square root.
template <class S>
Vec<S> bisector_axis(const Vec<S>& d, const S& qd, double tol) {
  const Index dim = d.size();
  Vec<S> e0 = Vec<S>::Zero(dim);
  e0(0) = S(1);
  Vec<S> z = e0 - d * S(d(0) / qd);
  if (!vec_is_zero(z, tol)) return z;
  // d is proportional to the time axis; any spatial axis works.
  Vec<S> e1 = Vec<S>::Zero(dim);
  e1(1) = S(1);
  return e1;
}

}  // namespace detail

/// Center locus for a hyperboloid of radius 2^e through both u and w:
/// c = (u+w)/2 + s z with eta(z, w-u) = 0 and
/// s^2 = (4^e - Q(w-u)/4) / Q(z). Returns the canonical witness (positive
/// square-root branch). Exact over the rational backend: the center lives in
/// a quadratic extension.
template <class S>
Hyperboloid<witness_scalar_t<S>> hyperboloid_through_pair(
    const Vec<S>& u, const Vec<S>& w, int e, double tol = kDefaultTolerance) {
  using W = witness_scalar_t<S>;
  check_same_dim(u, w);
  Vec<S> d = w - u;
  if (vec_is_zero(d, tol))
    fail(Errc::coincident_points, "need two distinct points");
  S qd = quadratic_form(d);
  int sq = sign_of(qd, tol);
  if (sq == 0)
    fail(Errc::light_like_pair,
         "no hyperboloid contains two light-like separated points");
  Vec<S> z = detail::bisector_axis(d, qd, tol);
  S qz = quadratic_form(z);
  S r2 = from_rational<S>(pow4q(e));
  S s_sq = (r2 - qd / S(4)) / qz;
  if (sign_of(s_sq, tol) < 0)
    fail(Errc::infeasible_exponent,
         "time-like pair needs 2^(e+1) <= sqrt(Q(u-w)), violated at e = " +
             std::to_string(e));
  W s = witness_sqrt<S>(s_sq);
  Vec<W> center = widen_vec(Vec<S>((u + w) / S(2))) + widen_vec(z) * s;
  Hyperboloid<W> h{center, from_rational<W>(pow2q(e))};
  if (!on_hyperboloid(h, widen_vec(u), tol) ||
      !on_hyperboloid(h, widen_vec(w), tol))
    fail(Errc::not_a_hyperboloid, "witness verification failed");  // unreachable
  return h;
}

/// Feasibility of hyperboloid_through_pair over a whole exponent range,
/// decided from the characterization rather than by search: space-like pairs
/// admit every exponent, time-like pairs exactly those with
/// 4^(e+1) <= Q(u-w), light-like pairs none.
template <class S>
bool lightlike_by_hyperboloid_criterion(const Vec<S>& u, const Vec<S>& w,
                                        int e_min, int e_max,
                                        double tol = kDefaultTolerance) {
  check_same_dim(u, w);
  Vec<S> d = u - w;
  if (vec_is_zero(d, tol))
    fail(Errc::coincident_points, "need two distinct points");
  CausalClass c = classify_vector(d, tol);
  if (c == CausalClass::Lightlike) return true;
  if (c == CausalClass::Spacelike) return e_min > e_max;
  S qd = quadratic_form(d);
  for (int e = e_min; e <= e_max; ++e)
    if (sign_of(S(qd - from_rational<S>(pow4q(e + 1))), tol) >= 0)
      return false;  // witness hyperboloid exists at this exponent
  return true;
}

/// Largest feasible exponent in [e_min, e_max] for a non-light-like pair,
/// if any.
template <class S>
std::optional<int> max_feasible_exponent(const Vec<S>& u, const Vec<S>& w,
                                         int e_min, int e_max,
                                         double tol = kDefaultTolerance) {
  Vec<S> d = u - w;
  CausalClass c = classify_vector(d, tol);
  if (c == CausalClass::Lightlike) return std::nullopt;
  if (c == CausalClass::Spacelike)
    return e_min <= e_max ? std::optional<int>(e_max) : std::nullopt;
  S qd = quadratic_form(d);
  for (int e = e_max; e >= e_min; --e)
    if (sign_of(S(qd - from_rational<S>(pow4q(e + 1))), tol) >= 0) return e;
  return std::nullopt;
}

/// Whether two points of one hyperboloid share a connected component:
/// equivalent (Prop 3) to their relative position being space-like.
template <class S>
bool same_shell(const Hyperboloid<S>& h, const Vec<S>& u, const Vec<S>& w,
                double tol = kDefaultTolerance) {
  if (!on_hyperboloid(h, u, tol) || !on_hyperboloid(h, w, tol))
    fail(Errc::not_on_hyperboloid, "both points must lie on the hyperboloid");
  return sign_of(S(u(0) - h.center(0)), tol) ==
         sign_of(S(w(0) - h.center(0)), tol);
}

/// Exact emptiness decision for the intersection of two shells. After
/// translating C's center to 0 the membership system reduces, via the linear
/// condition 2 eta(p, k) = Q(k) + rC^2 - rK^2 and the substitution
/// y = |k_spatial| * x1, to a one-variable quadratic sign problem on an open
/// interval, decided exactly.
template <class S>
bool shells_disjoint(const Shell<S>& c, const Shell<S>& k,
                     double tol = kDefaultTolerance) {
  check_same_dim(c.center, k.center);
  const int n = static_cast<int>(c.center.size()) - 1;
  const int sc = c.orientation == Orientation::Forward ? 1 : -1;
  const int sk = k.orientation == Orientation::Forward ? 1 : -1;
  Vec<S> disp = k.center - c.center;
  S rc2 = c.radius * c.radius;
  S rk2 = k.radius * k.radius;
  S t_off = disp(0);
  S w2 = spatial_norm_squared(disp);
  int st = sign_of(t_off, tol);
  int sw = sign_of(w2, tol);
  if (st == 0 && sw == 0) {
    if (!scalar_equal(rc2, rk2, tol)) return true;
    return sc != sk;
  }
  S mu = quadratic_form(disp) + rc2 - rk2;
  if (sw == 0) {
    // Purely temporal displacement: the slice time is forced.
    S t = mu / (S(2) * t_off);
    if (sign_of(S(t * t - rc2), tol) < 0) return true;
    if (sc * sign_of(t, tol) <= 0) return true;
    if (sk * sign_of(S(t - t_off), tol) <= 0) return true;
    return false;
  }
  if (st == 0) {
    // Purely spatial displacement: both time signs reachable, the two
    // orientation constraints collapse to one.
    return sc != sk;
  }
  // General position, y = |k_spatial| * x1:
  //   t(y) = (mu + 2 y) / (2 T),  F(y) = t(y)^2 - y^2/W^2 - rC^2.
  S c2 = S(1) / (t_off * t_off) - S(1) / w2;
  S c1 = mu / (t_off * t_off);
  S c0 = mu * mu / (S(4) * t_off * t_off) - rc2;
  detail::OpenInterval<S> iv;
  // sC * t(y) > 0  <=>  sC * sign(T) * (mu + 2y) > 0
  S b1 = -mu / S(2);
  if (sc * st > 0)
    iv.add_lower(b1, tol);
  else
    iv.add_upper(b1, tol);
  // sK * (t(y) - T) > 0  <=>  sK * sign(T) * (mu - 2 T^2 + 2y) > 0
  S b2 = t_off * t_off - mu / S(2);
  if (sk * st > 0)
    iv.add_lower(b2, tol);
  else
    iv.add_upper(b2, tol);
  bool meets = (n == 1)
                   ? detail::quadratic_has_root_on(c2, c1, c0, iv, tol)
                   : detail::quadratic_attains_nonneg_on(c2, c1, c0, iv, tol);
  return !meets;
}

template <class S>
struct ShellPairWitness {
  Shell<witness_scalar_t<S>> c;  // contains u and w
  Shell<witness_scalar_t<S>> k;  // contains v
  int exponent = 0;
};

/// Searches for two disjoint standard shells of opposite orientation with
/// u, w on one and v on the other. Candidates per exponent: the two shells
/// through u, w centered on the bisector axis, paired with the apex shells
/// directly above/below v. Every candidate is verified before being
/// returned; when the search is exhausted, a between triple yields absent
/// and anything else is reported as an error.
template <class S>
std::optional<ShellPairWitness<S>> betweenness_shell_falsifier(
    const Vec<S>& u, const Vec<S>& v, const Vec<S>& w, int e_min, int e_max,
    double tol = kDefaultTolerance) {
  using W = witness_scalar_t<S>;
  check_same_dim(u, v);
  check_same_dim(u, w);
  const Vec<S>* pts[3] = {&u, &v, &w};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (vec_is_zero(Vec<S>(*pts[i] - *pts[j]), tol))
        fail(Errc::coincident_points, "points must be pairwise distinct");
      if (classify_pair(*pts[i], *pts[j], tol) != CausalClass::Spacelike)
        fail(Errc::not_pairwise_spacelike,
             "points must be pairwise space-like");
    }
  Vec<S> d = w - u;
  S qd = quadratic_form(d);
  Vec<S> mid = (u + w) / S(2);
  Vec<S> z = detail::bisector_axis(d, qd, tol);
  S qz = quadratic_form(z);
  Vec<W> uw = widen_vec(u), vw = widen_vec(v), ww = widen_vec(w);
  Vec<W> e0 = Vec<W>::Zero(u.size());
  e0(0) = W(1);
  for (int e = e_min; e <= e_max; ++e) {
    S r2 = from_rational<S>(pow4q(e));
    W r = from_rational<W>(pow2q(e));
    W s = witness_sqrt<S>(S((r2 - qd / S(4)) / qz));
    Vec<W> axis = widen_vec(z);
    Vec<W> mid_w = widen_vec(mid);
    Shell<W> c_fwd{Vec<W>(mid_w - axis * s), r, Orientation::Forward, e};
    Shell<W> c_bwd{Vec<W>(mid_w + axis * s), r, Orientation::Backward, e};
    Shell<W> k_bwd{Vec<W>(vw + e0 * r), r, Orientation::Backward, e};
    Shell<W> k_fwd{Vec<W>(vw - e0 * r), r, Orientation::Forward, e};
    const std::pair<const Shell<W>*, const Shell<W>*> candidates[2] = {
        {&c_fwd, &k_bwd}, {&c_bwd, &k_fwd}};
    for (const auto& [cs, ks] : candidates) {
      if (!on_shell(*cs, uw, tol) || !on_shell(*cs, ww, tol)) continue;
      if (!on_shell(*ks, vw, tol)) continue;
      if (!shells_disjoint(*cs, *ks, tol)) continue;
      return ShellPairWitness<S>{*cs, *ks, e};
    }
  }
  if (is_between(u, v, w, tol)) return std::nullopt;
  fail(Errc::search_exhausted,
       "no disjoint opposite-orientation standard shell pair found in range");
}

/// Recovers the unique shell through at least n+2 points: the center solves
/// 2 eta(p_i - p_0, v) = Q(p_i) - Q(p_0), the radius and orientation follow,
/// and every input point is re-verified.
template <class S>
Shell<S> fit_shell(const std::vector<Vec<S>>& points,
                   double tol = kDefaultTolerance) {
  if (points.empty()) fail(Errc::degenerate_configuration, "no points");
  const Index dim = points[0].size();
  if (static_cast<Index>(points.size()) < dim + 1)
    fail(Errc::degenerate_configuration,
         "need at least n+2 points to determine a shell");
  for (const auto& p : points) check_same_dim(points[0], p);
  const Index rows = static_cast<Index>(points.size()) - 1;
  Mat<S> g(rows, dim);
  Vec<S> rhs(rows);
  S q0 = quadratic_form(points[0]);
  for (Index i = 0; i < rows; ++i) {
    Vec<S> d = points[i + 1] - points[0];
    g(i, 0) = S(2) * d(0);
    for (Index j = 1; j < dim; ++j) g(i, j) = S(-2) * d(j);
    rhs(i) = quadratic_form(points[i + 1]) - q0;
  }
  Eigen::FullPivLU<Mat<S>> lu(g);
  if constexpr (std::is_same_v<S, double>) lu.setThreshold(tol);
  if (lu.rank() < dim)
    fail(Errc::degenerate_configuration, "points do not pin down a center");
  Vec<S> center = lu.solve(rhs);
  if (!vec_equal(Vec<S>(g * center), rhs, tol))
    fail(Errc::inconsistent_points, "points lie on no common hyperboloid");
  S r2 = quadratic_form(Vec<S>(points[0] - center));
  if (sign_of(r2, tol) <= 0)
    fail(Errc::not_a_hyperboloid, "fitted radius is not positive");
  S radius;
  if constexpr (std::is_same_v<S, Rational>) {
    auto r = exact_sqrt(r2);
    if (!r)
      fail(Errc::irrational_square_root,
           "fitted radius is irrational over the rational backend");
    radius = *r;
  } else {
    radius = std::sqrt(r2);
  }
  int s0 = sign_of(S(points[0](0) - center(0)), tol);
  Shell<S> shell = make_shell(center, radius,
                              s0 > 0 ? Orientation::Forward
                                     : Orientation::Backward);
  for (const auto& p : points)
    if (!on_shell(shell, p, tol))
      fail(Errc::inconsistent_points,
           "input point fails the fitted shell (wrong component or residual)");
  return shell;
}

}  // namespace mink
