#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "mink/types.hpp"

namespace mink {

/// Minkowski quadratic form Q(v) = t^2 - x.x.
template <class S>
S quadratic_form(const Vec<S>& v) {
  S q = v(0) * v(0);
  for (Index i = 1; i < v.size(); ++i) q -= v(i) * v(i);
  return q;
}

/// Bilinear form eta(u,v) = t_u t_v - x_u . x_v; eta(v,v) = Q(v).
template <class S>
S bilinear_form(const Vec<S>& u, const Vec<S>& v) {
  check_same_dim(u, v);
  S q = u(0) * v(0);
  for (Index i = 1; i < u.size(); ++i) q -= u(i) * v(i);
  return q;
}

/// Euclidean square of the space part.
template <class S>
S spatial_norm_squared(const Vec<S>& v) {
  S q = S(0);
  for (Index i = 1; i < v.size(); ++i) q += v(i) * v(i);
  return q;
}

template <class S>
CausalClass classify_vector(const Vec<S>& v, double tol = kDefaultTolerance) {
  if (vec_is_zero(v, tol))
    fail(Errc::zero_vector, "zero vector has no causal class");
  int s = sign_of(quadratic_form(v), tol);
  if (s < 0) return CausalClass::Spacelike;
  if (s > 0) return CausalClass::Timelike;
  return CausalClass::Lightlike;
}

template <class S>
CausalClass classify_pair(const Vec<S>& u, const Vec<S>& w,
                          double tol = kDefaultTolerance) {
  check_same_dim(u, w);
  Vec<S> d = u - w;
  if (vec_is_zero(d, tol))
    fail(Errc::coincident_points, "coincident points have no relative position");
  return classify_vector(d, tol);
}

// --- lines -------------------------------------------------------------------

namespace detail {

template <class S>
Index leading_nonzero(const Vec<S>& v, double tol) {
  for (Index i = 0; i < v.size(); ++i)
    if (sign_of(v(i), tol) != 0) return i;
  return -1;
}

}  // namespace detail

/// Scales a nonzero direction to its canonical representative: the primitive
/// integer vector with positive leading entry on the rational backend, the
/// unit vector with positive leading entry on float64.
template <class S>
Vec<S> canonical_direction(const Vec<S>& d, double tol = kDefaultTolerance) {
  Index lead = detail::leading_nonzero(d, tol);
  if (lead < 0) fail(Errc::zero_vector, "zero direction");
  if constexpr (std::is_same_v<S, Rational>) {
    mpz_class den_lcm = 1;
    for (Index i = 0; i < d.size(); ++i)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
              d(i).get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    Vec<S> scaled = d * Rational(den_lcm);
    for (Index i = 0; i < d.size(); ++i) {
      scaled(i).canonicalize();
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
              scaled(i).get_num().get_mpz_t());
    }
    Vec<S> out = scaled / Rational(num_gcd);
    for (Index i = 0; i < out.size(); ++i) out(i).canonicalize();
    if (sgn(out(lead)) < 0) out = -out;
    return out;
  } else {
    S norm2 = S(0);
    for (Index i = 0; i < d.size(); ++i) norm2 += d(i) * d(i);
    Vec<S> out = d / std::sqrt(norm2);
    if (sign_of(out(lead), tol) < 0) out = -out;
    return out;
  }
}

template <class S>
bool directions_parallel(const Vec<S>& u, const Vec<S>& v,
                         double tol = kDefaultTolerance) {
  check_same_dim(u, v);
  for (Index i = 0; i < u.size(); ++i)
    for (Index j = i + 1; j < u.size(); ++j)
      if (sign_of(u(i) * v(j) - u(j) * v(i), tol) != 0) return false;
  return true;
}

template <class S>
Line<S> canonical_line(const Line<S>& line, double tol = kDefaultTolerance) {
  Vec<S> dir = canonical_direction(line.direction, tol);
  Index lead = detail::leading_nonzero(dir, tol);
  Vec<S> base = line.base - dir * S(line.base(lead) / dir(lead));
  return {base, dir};
}

template <class S>
bool lines_equal(const Line<S>& a, const Line<S>& b,
                 double tol = kDefaultTolerance) {
  Line<S> ca = canonical_line(a, tol), cb = canonical_line(b, tol);
  return vec_equal(ca.base, cb.base, tol) &&
         vec_equal(ca.direction, cb.direction, tol);
}

template <class S>
bool point_on_line(const Vec<S>& p, const Line<S>& line,
                   double tol = kDefaultTolerance) {
  Vec<S> d = p - line.base;
  if (vec_is_zero(d, tol)) return true;
  return directions_parallel(d, line.direction, tol);
}

template <class S>
CausalClass classify_line(const Line<S>& line,
                          double tol = kDefaultTolerance) {
  return classify_vector(line.direction, tol);
}

/// True iff v = a u + (1-a) w for some a in [0,1]. Requires pairwise
/// distinct points; implies collinearity.
template <class S>
bool is_between(const Vec<S>& u, const Vec<S>& v, const Vec<S>& w,
                double tol = kDefaultTolerance) {
  check_same_dim(u, v);
  check_same_dim(u, w);
  Vec<S> d = u - w;
  if (vec_is_zero(d, tol) || vec_is_zero(Vec<S>(v - u), tol) ||
      vec_is_zero(Vec<S>(v - w), tol))
    fail(Errc::coincident_points, "is_between needs pairwise distinct points");
  Index lead = detail::leading_nonzero(d, tol);
  S a = (v(lead) - w(lead)) / d(lead);
  for (Index i = 0; i < d.size(); ++i)
    if (!scalar_equal(v(i) - w(i), a * d(i), tol)) return false;
  return sign_of(a, tol) >= 0 && sign_of(S(1) - a, tol) >= 0;
}

// --- planes ------------------------------------------------------------------

namespace detail {

/// Coordinates (s,u) with base + s d1 + u d2 = p, when p lies in the plane.
template <class S>
std::optional<std::pair<S, S>> plane_coordinates(const PlaneSpan<S>& plane,
                                                 const Vec<S>& p, double tol) {
  check_same_dim(plane.base, p);
  const Index dim = p.size();
  Mat<S> m(dim, 2);
  m.col(0) = plane.d1;
  m.col(1) = plane.d2;
  Vec<S> rhs = p - plane.base;
  // Solve the 2x2 normal system via two independent rows, then verify.
  Index r0 = -1, r1 = -1;
  for (Index i = 0; i < dim && r1 < 0; ++i) {
    if (r0 < 0) {
      if (sign_of(m(i, 0), tol) != 0 || sign_of(m(i, 1), tol) != 0) r0 = i;
      continue;
    }
    S det = m(r0, 0) * m(i, 1) - m(r0, 1) * m(i, 0);
    if (sign_of(det, tol) != 0) r1 = i;
  }
  S s, u;
  if (r0 < 0) {
    return std::nullopt;  // degenerate span, caller rejects earlier
  }
  if (r1 < 0) {
    // d1, d2 proportional along every row pair; treat as unsolvable here.
    return std::nullopt;
  }
  S det = m(r0, 0) * m(r1, 1) - m(r0, 1) * m(r1, 0);
  s = (rhs(r0) * m(r1, 1) - rhs(r1) * m(r0, 1)) / det;
  u = (m(r0, 0) * rhs(r1) - m(r1, 0) * rhs(r0)) / det;
  for (Index i = 0; i < dim; ++i)
    if (!scalar_equal(rhs(i), m(i, 0) * s + m(i, 1) * u, tol))
      return std::nullopt;
  return std::make_pair(s, u);
}

template <class S>
void check_plane_span(const PlaneSpan<S>& plane, double tol) {
  if (vec_is_zero(plane.d1, tol) || vec_is_zero(plane.d2, tol) ||
      directions_parallel(plane.d1, plane.d2, tol))
    fail(Errc::degenerate_span, "plane span directions are dependent");
}

}  // namespace detail

template <class S>
bool point_in_plane(const PlaneSpan<S>& plane, const Vec<S>& p,
                    double tol = kDefaultTolerance) {
  detail::check_plane_span(plane, tol);
  return detail::plane_coordinates(plane, p, tol).has_value();
}

/// A plane is a Lorentz plane iff Q restricted to its direction space is
/// indefinite and nondegenerate, i.e. the Gram determinant
/// Q(d1) Q(d2) - eta(d1,d2)^2 is negative.
template <class S>
bool is_lorentz_plane(const PlaneSpan<S>& plane,
                      double tol = kDefaultTolerance) {
  detail::check_plane_span(plane, tol);
  S a = quadratic_form(plane.d1);
  S b = bilinear_form(plane.d1, plane.d2);
  S c = quadratic_form(plane.d2);
  return sign_of(a * c - b * b, tol) < 0;
}

/// All light-like lines through p inside the plane: two for a Lorentz plane,
/// one when the restricted form is degenerate, none when it is definite.
/// Deterministic order: lexicographic on the canonical direction.
template <class S>
std::vector<Line<S>> light_directions_in_plane(const PlaneSpan<S>& plane,
                                               const Vec<S>& p,
                                               double tol = kDefaultTolerance) {
  detail::check_plane_span(plane, tol);
  if (!detail::plane_coordinates(plane, p, tol))
    fail(Errc::point_not_in_plane, "point is not in the plane");
  S a = quadratic_form(plane.d1);
  S b = bilinear_form(plane.d1, plane.d2);
  S c = quadratic_form(plane.d2);
  // Null directions alpha d1 + beta d2 solve a alpha^2 + 2 b alpha beta
  // + c beta^2 = 0.
  std::vector<Vec<S>> dirs;
  if (sign_of(a, tol) != 0) {
    S disc = b * b - a * c;
    int sd = sign_of(disc, tol);
    if (sd > 0) {
      S root;
      if constexpr (std::is_same_v<S, Rational>) {
        auto r = exact_sqrt(disc);
        if (!r)
          fail(Errc::irrational_square_root,
               "light directions are irrational over the rational backend");
        root = *r;
      } else {
        root = std::sqrt(disc);
      }
      dirs.push_back(Vec<S>(S(-b + root) * plane.d1 + a * plane.d2));
      dirs.push_back(Vec<S>(S(-b - root) * plane.d1 + a * plane.d2));
    } else if (sd == 0) {
      dirs.push_back(Vec<S>(S(-b) * plane.d1 + a * plane.d2));
    }
  } else if (sign_of(b, tol) != 0) {
    dirs.push_back(plane.d1);
    dirs.push_back(Vec<S>(S(-c) * plane.d1 + S(b + b) * plane.d2));
  } else if (sign_of(c, tol) != 0) {
    dirs.push_back(plane.d1);  // only beta = 0 solves c beta^2 = 0
  } else {
    // a = b = c = 0 would make the span totally isotropic, impossible in
    // signature (1,n).
    fail(Errc::degenerate_span, "totally isotropic plane span");
  }
  std::vector<Line<S>> out;
  for (const auto& d : dirs) out.push_back(canonical_line(Line<S>{p, d}, tol));
  std::sort(out.begin(), out.end(), [&](const Line<S>& x, const Line<S>& y) {
    for (Index i = 0; i < x.direction.size(); ++i) {
      int s = sign_of(S(x.direction(i) - y.direction(i)), tol);
      if (s != 0) return s < 0;
    }
    return false;
  });
  return out;
}

/// Intersection point of two non-parallel lines, if they meet.
template <class S>
std::optional<Vec<S>> intersect_lines(const Line<S>& l1, const Line<S>& l2,
                                      double tol = kDefaultTolerance) {
  check_same_dim(l1.base, l2.base);
  PlaneSpan<S> span{l1.base, l1.direction, Vec<S>(-l2.direction)};
  auto coords = detail::plane_coordinates(span, l2.base, tol);
  if (!coords) return std::nullopt;
  return Vec<S>(l1.base + coords->first * l1.direction);
}

/// The unique Lorentz plane through two distinct intersecting light-like
/// lines.
template <class S>
PlaneSpan<S> plane_through_light_lines(const Line<S>& l1, const Line<S>& l2,
                                       double tol = kDefaultTolerance) {
  if (classify_line(l1, tol) != CausalClass::Lightlike ||
      classify_line(l2, tol) != CausalClass::Lightlike)
    fail(Errc::not_light_like, "both lines must be light-like");
  if (directions_parallel(l1.direction, l2.direction, tol)) {
    if (lines_equal(l1, l2, tol))
      fail(Errc::identical_lines, "the two lines coincide");
    fail(Errc::non_intersecting, "parallel distinct light lines do not meet");
  }
  auto p = intersect_lines(l1, l2, tol);
  if (!p) fail(Errc::non_intersecting, "the light lines do not intersect");
  return PlaneSpan<S>{*p, l1.direction, l2.direction};
}

template <class S>
struct KLinesResult {
  Line<S> k12, k13, k23;
  bool collinear = false;
};

/// Builds the cross lines K12, K13, K23 from parallel light lines through
/// u, v, w and the opposite light lines inside a Lorentz plane, and reports
/// whether the three points are collinear (iff the K lines are mutually
/// parallel).
template <class S>
KLinesResult<S> k_lines_collinearity(const PlaneSpan<S>& plane,
                                     const Vec<S>& u, const Vec<S>& v,
                                     const Vec<S>& w,
                                     double tol = kDefaultTolerance) {
  if (!is_lorentz_plane(plane, tol))
    fail(Errc::not_lorentz_plane, "plane is not a Lorentz plane");
  for (const Vec<S>* p : {&u, &v, &w})
    if (!detail::plane_coordinates(plane, *p, tol))
      fail(Errc::points_not_in_plane, "points must lie in the plane");
  const Vec<S>* pts[3] = {&u, &v, &w};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (vec_is_zero(Vec<S>(*pts[i] - *pts[j]), tol))
        fail(Errc::coincident_points, "points must be pairwise distinct");
      if (classify_pair(*pts[i], *pts[j], tol) != CausalClass::Spacelike)
        fail(Errc::not_pairwise_spacelike,
             "points must be pairwise space-like");
    }
  auto lights = light_directions_in_plane(plane, plane.base, tol);
  const Vec<S>& e = lights[0].direction;   // parallel family L1, L2, L3
  const Vec<S>& e2 = lights[1].direction;  // opposite family L1', L2', L3'

  auto cross = [&](const Vec<S>& a, const Vec<S>& b) -> Line<S> {
    auto p1 = intersect_lines(Line<S>{a, e}, Line<S>{b, e2}, tol);
    auto p2 = intersect_lines(Line<S>{a, e2}, Line<S>{b, e}, tol);
    if (!p1 || !p2)
      fail(Errc::non_intersecting, "light lines failed to cross");  // unreachable
    return canonical_line(Line<S>{*p1, Vec<S>(*p2 - *p1)}, tol);
  };
  KLinesResult<S> res;
  res.k12 = cross(u, v);
  res.k13 = cross(u, w);
  res.k23 = cross(v, w);
  res.collinear =
      directions_parallel(res.k12.direction, res.k13.direction, tol) &&
      directions_parallel(res.k12.direction, res.k23.direction, tol) &&
      directions_parallel(res.k13.direction, res.k23.direction, tol);
  return res;
}

// --- Robb hyperplanes and cones ------------------------------------------------

template <class S>
RobbHyperplane<S> robb_hyperplane(const Line<S>& line,
                                  double tol = kDefaultTolerance) {
  if (classify_line(line, tol) != CausalClass::Lightlike)
    fail(Errc::not_light_like, "Robb hyperplanes come from light-like lines");
  Line<S> c = canonical_line(line, tol);
  return RobbHyperplane<S>{c.base, c.direction};
}

template <class S>
bool robb_contains(const RobbHyperplane<S>& h, const Vec<S>& p,
                   double tol = kDefaultTolerance) {
  return sign_of(bilinear_form(Vec<S>(p - h.base), h.light_direction), tol) ==
         0;
}

/// Membership via light-like connection alone: p belongs to the generating
/// line, or no point of that line is light-like separated from p. Since the
/// direction is null, Q(p - base - s d) is linear in s, so the test is exact.
template <class S>
bool robb_characterization_contains(const RobbHyperplane<S>& h,
                                    const Vec<S>& p,
                                    double tol = kDefaultTolerance) {
  Line<S> line{h.base, h.light_direction};
  if (point_on_line(p, line, tol)) return true;
  Vec<S> d = p - h.base;
  S c1 = bilinear_form(d, h.light_direction);
  if (sign_of(c1, tol) != 0) return false;  // some w on L has Q(p-w) = 0
  // c1 == 0 and p off the line force Q(p - base) != 0: no light-like w.
  return true;
}

template <class S>
bool cone_contains(const LightCone<S>& cone, const Vec<S>& p,
                   double tol = kDefaultTolerance) {
  return sign_of(quadratic_form(Vec<S>(p - cone.apex)), tol) == 0;
}

template <class S>
bool forward_cone_contains(const LightCone<S>& cone, const Vec<S>& p,
                           double tol = kDefaultTolerance) {
  return cone_contains(cone, p, tol) &&
         sign_of(S(p(0) - cone.apex(0)), tol) >= 0;
}

}  // namespace mink
