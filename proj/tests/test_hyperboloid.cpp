#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mink/certify.hpp"
#include "mink/hyperboloid.hpp"
#include "mink/random_maps.hpp"

using namespace mink;

namespace {

Vec<Rational> rv(std::initializer_list<const char*> xs) {
  Vec<Rational> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const char* x : xs) v(i++) = rat(x);
  return v;
}

Hyperboloid<Rational> unit_at(std::initializer_list<long> c) {
  return {rvec(c), rat(1)};
}

/// Brute-force oracle for the quadratic decision helpers: scan a rational
/// grid for a witness.
bool grid_attains_nonneg(const Rational& c2, const Rational& c1,
                         const Rational& c0,
                         const detail::OpenInterval<Rational>& iv) {
  Rational lo = iv.lo ? *iv.lo : rat(-100);
  Rational hi = iv.hi ? *iv.hi : rat(100);
  Rational step = (hi - lo) / 4000;
  if (sgn(step) <= 0) return false;
  for (Rational y = lo + step / 2; y < hi; y += step) {
    if (!iv.contains(y, 0)) continue;
    if (sgn(c2 * y * y + c1 * y + c0) >= 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("hyperboloid membership") {
  CHECK(on_hyperboloid(unit_at({0, 0}), rvec({1, 0})));
  CHECK(on_hyperboloid(unit_at({0, 0}), rv({"5/4", "3/4"})));
  CHECK(on_hyperboloid(unit_at({2, 0}), rvec({1, 0})));
  CHECK(!on_hyperboloid(unit_at({0, 0}), rvec({2, 0})));
}

TEST_CASE("shell membership and orientation") {
  Shell<Rational> fwd = make_shell(rvec({0, 0}), rat(1), Orientation::Forward);
  CHECK(on_shell(fwd, rvec({1, 0})));
  CHECK(!on_shell(fwd, rvec({-1, 0})));
  Shell<Rational> bwd =
      make_shell(rvec({0, 5}), rat(1), Orientation::Backward);
  CHECK(on_shell(bwd, rvec({-1, 5})));
  CHECK(!on_shell(bwd, rvec({1, 5})));
  CHECK(fwd.standard_exponent == 0);
  Shell<Rational> odd = make_shell(rvec({0, 0}), rat(3), Orientation::Forward);
  CHECK(!odd.standard_exponent);
}

TEST_CASE("dilation") {
  Hyperboloid<Rational> h = unit_at({0, 0});
  CHECK(dilate(h, rat(2)).radius == 2);
  CHECK(dilate(h, rat(1)).radius == 1);
  CHECK(dilate(Hyperboloid<Rational>{rvec({0, 0}), rat(3, 2)}, rat(2, 3))
            .radius == 1);
  CHECK_THROWS_AS(dilate(h, rat(0)), MinkError);
  CHECK_THROWS_AS(dilate(unit_at({1, 0}), rat(2)), MinkError);
  // pointwise: m * (point of H(0,r)) lies on H(0, m r)
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Vec<Rational> p = sample_unit_shell_point(rng, 2, rng.coin());
    Rational m = rat(rng.int_in(1, 12), rng.int_in(1, 7));
    Hyperboloid<Rational> hm{rvec({0, 0, 0}), m};
    CHECK(on_hyperboloid(hm, Vec<Rational>(m * p)));
  }
}

TEST_CASE("equal-radius intersection classification") {
  // tangency on the dilated surface
  CHECK(intersect_same_radius(unit_at({0, 0}), unit_at({2, 0})) ==
        IntersectionCardinality::Singleton);
  // far time-like separation: two points for n = 1, a circle's worth above
  CHECK(intersect_same_radius(unit_at({0, 0}), unit_at({3, 0})) ==
        IntersectionCardinality::Pair);
  CHECK(intersect_same_radius(unit_at({0, 0, 0}), unit_at({3, 0, 0})) ==
        IntersectionCardinality::Infinite);
  // the n = 1 pair is {(3/2, +-sqrt(5)/2)}: both points check out in the
  // quadratic extension
  {
    QuadExt half_root5 = QuadExt::sqrt_of(rat(5, 4));
    Vec<QuadExt> p(2);
    p(0) = QuadExt(rat(3, 2));
    p(1) = half_root5;
    Hyperboloid<QuadExt> a{widen_vec(rvec({0, 0})), QuadExt(rat(1))};
    Hyperboloid<QuadExt> b{widen_vec(rvec({3, 0})), QuadExt(rat(1))};
    CHECK(on_hyperboloid(a, p));
    CHECK(on_hyperboloid(b, p));
    p(1) = -half_root5;
    CHECK(on_hyperboloid(a, p));
    CHECK(on_hyperboloid(b, p));
  }
  // light-like displacement is always empty
  CHECK(intersect_same_radius(unit_at({0, 0}), unit_at({1, 1})) ==
        IntersectionCardinality::Empty);
  // close time-like separation is empty
  CHECK(intersect_same_radius(unit_at({0, 0}), unit_at({1, 0})) ==
        IntersectionCardinality::Empty);
  // space-like separation
  CHECK(intersect_same_radius(unit_at({0, 0}), unit_at({0, 3})) ==
        IntersectionCardinality::Pair);
  CHECK(intersect_same_radius(unit_at({0, 0, 0}), unit_at({0, 3, 0})) ==
        IntersectionCardinality::Infinite);
  CHECK(intersect_same_radius(unit_at({0, 0}), unit_at({0, 0})) ==
        IntersectionCardinality::Infinite);
  CHECK_THROWS_AS(
      intersect_same_radius(unit_at({0, 0}),
                            Hyperboloid<Rational>{rvec({0, 3}), rat(2)}),
      MinkError);
}

TEST_CASE("intersection classification is Poincare invariant") {
  Rng rng(7);
  for (int i = 0; i < 150; ++i) {
    int n = static_cast<int>(rng.int_in(1, 3));
    AffineMap<Rational> f = random_poincare(rng.u64(), n);
    Vec<Rational> c1 = rng.event(n, 32, 4), c2 = rng.event(n, 32, 4);
    Rational r = pow2q(static_cast<int>(rng.int_in(-2, 2)));
    Hyperboloid<Rational> a{c1, r}, b{c2, r};
    Hyperboloid<Rational> fa{apply(f, c1), r}, fb{apply(f, c2), r};
    CHECK(intersect_same_radius(a, b) == intersect_same_radius(fa, fb));
  }
}

TEST_CASE("singleton locus") {
  CHECK(singleton_locus_check(rvec({2, 0}), rat(1)));
  CHECK(singleton_locus_check(rvec({-2, 0}), rat(1)));
  CHECK(!singleton_locus_check(rvec({0, 2}), rat(1)));
  CHECK(!singleton_locus_check(rvec({3, 0}), rat(1)));
  // locus education: Q(v) = 4 r^2 exactly
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    int n = static_cast<int>(rng.int_in(1, 3));
    Rational r = pow2q(static_cast<int>(rng.int_in(-1, 1)));
    Vec<Rational> v = rng.event(n, 16, 4);
    if (vec_is_zero(v)) continue;
    CHECK(singleton_locus_check(v, r) ==
          (quadratic_form(v) == rat(4) * r * r));
  }
}

TEST_CASE("hyperboloid through a pair: worked examples") {
  // space-like pair: center (sqrt 2, 1)
  auto h1 = hyperboloid_through_pair(rvec({0, 0}), rvec({0, 2}), 0);
  CHECK(h1.center(0) == QuadExt::sqrt_of(rat(2)));
  CHECK(h1.center(1) == QuadExt(rat(1)));
  CHECK(h1.radius == QuadExt(rat(1)));
  // time-like pair: center (2, sqrt 3)
  auto h2 = hyperboloid_through_pair(rvec({0, 0}), rvec({4, 0}), 0);
  CHECK(h2.center(0) == QuadExt(rat(2)));
  CHECK(h2.center(1) == QuadExt::sqrt_of(rat(3)));
  // tangency: center (1, 0)
  auto h3 = hyperboloid_through_pair(rvec({0, 0}), rvec({2, 0}), 0);
  CHECK(h3.center(0) == QuadExt(rat(1)));
  CHECK(h3.center(1) == QuadExt(rat(0)));
  CHECK_THROWS_AS(hyperboloid_through_pair(rvec({0, 0}), rvec({1, 1}), 0),
                  MinkError);
  CHECK_THROWS_AS(hyperboloid_through_pair(rvec({0, 0}), rvec({4, 0}), 2),
                  MinkError);  // 2^(e+1) = 8 > 4
  CHECK_THROWS_AS(hyperboloid_through_pair(rvec({0, 0}), rvec({0, 0}), 0),
                  MinkError);
}

TEST_CASE("hyperboloid through a pair: membership always verifies") {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    int n = static_cast<int>(rng.int_in(1, 3));
    Vec<Rational> u = rng.event(n, 32, 4);
    Vec<Rational> d = suites::random_spacelike(rng, n);
    int e = static_cast<int>(rng.int_in(-4, 4));
    auto h = hyperboloid_through_pair(u, Vec<Rational>(u + d), e);
    CHECK(on_hyperboloid(h, widen_vec(u)));
    CHECK(on_hyperboloid(h, widen_vec(Vec<Rational>(u + d))));
    CHECK(h.radius == from_rational<QuadExt>(pow2q(e)));
  }
}

TEST_CASE("light-likeness via the hyperboloid criterion") {
  CHECK(lightlike_by_hyperboloid_criterion(rvec({0, 0}), rvec({1, 1}), -8, 8));
  CHECK(
      !lightlike_by_hyperboloid_criterion(rvec({0, 0}), rvec({0, 2}), -8, 8));
  CHECK(
      !lightlike_by_hyperboloid_criterion(rvec({0, 0}), rvec({4, 0}), -8, 8));
  CHECK_THROWS_AS(
      lightlike_by_hyperboloid_criterion(rvec({1, 1}), rvec({1, 1}), -8, 8),
      MinkError);
  // feasibility boundary for the time-like pair (0,0),(4,0): e <= 1
  CHECK(max_feasible_exponent(rvec({0, 0}), rvec({4, 0}), -8, 8) == 1);
  CHECK_NOTHROW(hyperboloid_through_pair(rvec({0, 0}), rvec({4, 0}), 1));
}

TEST_CASE("same shell iff space-like separated") {
  Hyperboloid<Rational> h = unit_at({0, 0});
  CHECK(same_shell(h, rv({"5/4", "3/4"}), rv({"5/4", "-3/4"})));
  CHECK(classify_pair(rv({"5/4", "3/4"}), rv({"5/4", "-3/4"})) ==
        CausalClass::Spacelike);
  CHECK(!same_shell(h, rvec({1, 0}), rvec({-1, 0})));
  CHECK(!same_shell(unit_at({0, 5}), rvec({1, 5}), rvec({-1, 5})));
  CHECK_THROWS_AS(same_shell(h, rvec({1, 0}), rvec({2, 0})), MinkError);
}

TEST_CASE("quadratic decision helpers against a grid oracle") {
  Rng rng(29);
  for (int i = 0; i < 3000; ++i) {
    Rational c2 = rng.rational(6, 3);
    Rational c1 = rng.rational(6, 3);
    Rational c0 = rng.rational(6, 3);
    detail::OpenInterval<Rational> iv;
    if (rng.coin()) iv.add_lower(rng.rational(8, 2), 0);
    if (rng.coin()) iv.add_upper(rng.rational(8, 2), 0);
    bool got = detail::quadratic_attains_nonneg_on(c2, c1, c0, iv, 0);
    bool grid = grid_attains_nonneg(c2, c1, c0, iv);
    // the grid can miss witnesses near endpoints but never invents one
    if (grid) CHECK(got);
    if (!got) CHECK(!grid);
  }
}

TEST_CASE("quadratic root location against exact roots") {
  // roots known by construction: (y - r1)(y - r2) scaled
  Rng rng(37);
  for (int i = 0; i < 2000; ++i) {
    Rational r1 = rng.rational(10, 4);
    Rational r2 = rng.rational(10, 4);
    Rational scale = rng.nonzero_rational(4, 2);
    Rational c2 = scale, c1 = -scale * (r1 + r2), c0 = scale * r1 * r2;
    detail::OpenInterval<Rational> iv;
    if (rng.coin()) iv.add_lower(rng.rational(12, 4), 0);
    if (rng.coin()) iv.add_upper(rng.rational(12, 4), 0);
    bool expect = iv.contains(r1, 0) || iv.contains(r2, 0);
    CHECK(detail::quadratic_has_root_on(c2, c1, c0, iv, 0) == expect);
  }
}

TEST_CASE("shell disjointness worked examples") {
  Shell<Rational> f0 = make_shell(rvec({0, 0, 0}), rat(1), Orientation::Forward);
  Shell<Rational> b5 =
      make_shell(rvec({0, 5, 0}), rat(1), Orientation::Backward);
  Shell<Rational> f5 = make_shell(rvec({0, 5, 0}), rat(1), Orientation::Forward);
  CHECK(shells_disjoint(f0, b5));
  CHECK(!shells_disjoint(f0, f5));
  // the common point (sqrt(29)/2, 5/2, 0) of the forward pair
  {
    Vec<QuadExt> p(3);
    p(0) = QuadExt::sqrt_of(rat(29, 4));
    p(1) = QuadExt(rat(5, 2));
    p(2) = QuadExt(rat(0));
    Shell<QuadExt> wf0{widen_vec(rvec({0, 0, 0})), QuadExt(rat(1)),
                       Orientation::Forward, 0};
    Shell<QuadExt> wf5{widen_vec(rvec({0, 5, 0})), QuadExt(rat(1)),
                       Orientation::Forward, 0};
    CHECK(on_shell(wf0, p));
    CHECK(on_shell(wf5, p));
  }
  // time-like separated opposite pair that still meets: common sphere at t=5
  Shell<Rational> b10 =
      make_shell(rvec({10, 0, 0}), rat(1), Orientation::Backward);
  CHECK(!shells_disjoint(f0, b10));
  {
    QuadExt s24 = QuadExt::sqrt_of(rat(24));
    Vec<QuadExt> p(3);
    p(0) = QuadExt(rat(5));
    p(1) = s24;
    p(2) = QuadExt(rat(0));
    Shell<QuadExt> wf0{widen_vec(rvec({0, 0, 0})), QuadExt(rat(1)),
                       Orientation::Forward, 0};
    Shell<QuadExt> wb10{widen_vec(rvec({10, 0, 0})), QuadExt(rat(1)),
                        Orientation::Backward, 0};
    CHECK(on_shell(wf0, p));
    CHECK(on_shell(wb10, p));
  }
  // nested same-orientation time-like pair: disjoint despite equal
  // orientation (centers not space-like separated)
  Shell<Rational> f_high =
      make_shell(rvec({1, 0, 0}), rat(1), Orientation::Forward);
  CHECK(shells_disjoint(f0, f_high));
  // n = 1 camera: forward unit shells at space-like separated centers meet
  Shell<Rational> a1 = make_shell(rvec({0, 0}), rat(1), Orientation::Forward);
  Shell<Rational> b1 = make_shell(rvec({0, 5}), rat(1), Orientation::Forward);
  CHECK(!shells_disjoint(a1, b1));
  CHECK(shells_disjoint(a1, make_shell(rvec({0, 5}), rat(1),
                                       Orientation::Backward)));
  // identical shells and same-center variants
  CHECK(!shells_disjoint(f0, f0));
  CHECK(shells_disjoint(f0, make_shell(rvec({0, 0, 0}), rat(1),
                                       Orientation::Backward)));
  CHECK(shells_disjoint(f0, make_shell(rvec({0, 0, 0}), rat(2),
                                       Orientation::Forward)));
}

TEST_CASE("shell disjointness against a float sampling oracle") {
  // When exact arithmetic says the shells meet, a float search should find
  // a near-contact point; when it says disjoint, no sampled point of C may
  // lie on K. The float side only corroborates, the exact side decides.
  Rng rng(43);
  for (int i = 0; i < 400; ++i) {
    int n = static_cast<int>(rng.int_in(1, 2));
    Shell<Rational> c =
        make_shell(rng.event(n, 8, 2), pow2q(static_cast<int>(rng.int_in(-1, 1))),
                   rng.coin() ? Orientation::Forward : Orientation::Backward);
    Shell<Rational> k =
        make_shell(rng.event(n, 8, 2), pow2q(static_cast<int>(rng.int_in(-1, 1))),
                   rng.coin() ? Orientation::Forward : Orientation::Backward);
    bool disjoint = shells_disjoint(c, k);
    if (!disjoint) continue;
    // sample points of c and confirm none lies on k (exact arithmetic)
    for (int s = 0; s < 40; ++s) {
      Vec<Rational> p =
          c.center + c.radius * sample_unit_shell_point(
                                    rng, n, c.orientation == Orientation::Forward);
      CHECK(on_shell(c, p));
      CHECK(!on_shell(k, p));
    }
  }
}

TEST_CASE("betweenness falsifier worked examples") {
  // collinear, outside the segment: a verified pair exists
  auto pair = betweenness_shell_falsifier(rvec({0, -1}), rvec({0, 2}),
                                          rvec({0, 1}), -8, 8);
  REQUIRE(pair);
  CHECK(pair->c.orientation != pair->k.orientation);
  CHECK(shells_disjoint(pair->c, pair->k));
  CHECK(on_shell(pair->c, widen_vec(rvec({0, -1}))));
  CHECK(on_shell(pair->c, widen_vec(rvec({0, 1}))));
  CHECK(on_shell(pair->k, widen_vec(rvec({0, 2}))));

  // between: absent
  CHECK(!betweenness_shell_falsifier(rvec({0, -1}), rvec({0, 0}), rvec({0, 1}),
                                     -8, 8));

  // time-shifted non-collinear case in n = 2
  auto pair2 = betweenness_shell_falsifier(rvec({0, -2, 0}), rvec({1, 0, 0}),
                                           rvec({0, 2, 0}), -8, 8);
  REQUIRE(pair2);
  CHECK(pair2->c.orientation != pair2->k.orientation);
  CHECK(shells_disjoint(pair2->c, pair2->k));

  CHECK_THROWS_AS(betweenness_shell_falsifier(rvec({0, 0}), rvec({1, 0}),
                                              rvec({0, 1}), -8, 8),
                  MinkError);  // not pairwise space-like
}

TEST_CASE("shell fitting") {
  std::vector<Vec<Rational>> pts = {rvec({1, 0}), rv({"5/4", "3/4"}),
                                    rv({"5/4", "-3/4"})};
  Shell<Rational> s = fit_shell(pts);
  CHECK(vec_equal(s.center, rvec({0, 0})));
  CHECK(s.radius == 1);
  CHECK(s.orientation == Orientation::Forward);
  CHECK(s.standard_exponent == 0);

  // translation equivariance
  std::vector<Vec<Rational>> shifted;
  for (const auto& p : pts) shifted.push_back(Vec<Rational>(p + rvec({0, 5})));
  Shell<Rational> s2 = fit_shell(shifted);
  CHECK(vec_equal(s2.center, rvec({0, 5})));
  CHECK(s2.radius == 1);
  CHECK(s2.orientation == Orientation::Forward);

  // mixed components fail the orientation verification
  std::vector<Vec<Rational>> mixed = {rvec({1, 0}), rvec({-1, 0}),
                                      rv({"5/4", "3/4"})};
  CHECK_THROWS_AS(fit_shell(mixed), MinkError);

  // degenerate: too few points
  CHECK_THROWS_AS(fit_shell(std::vector<Vec<Rational>>{rvec({1, 0})}), MinkError);
}

TEST_CASE("shell fitting round trip on sampled shells") {
  Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    int n = static_cast<int>(rng.int_in(1, 3));
    Shell<Rational> shell =
        make_shell(rng.event(n, 16, 4), pow2q(static_cast<int>(rng.int_in(-2, 2))),
                   rng.coin() ? Orientation::Forward : Orientation::Backward);
    std::vector<Vec<Rational>> pts;
    for (int k = 0; k < n + 3; ++k)
      pts.push_back(shell.center +
                    shell.radius *
                        sample_unit_shell_point(
                            rng, n, shell.orientation == Orientation::Forward));
    try {
      Shell<Rational> fitted = fit_shell(pts);
      CHECK(vec_equal(fitted.center, shell.center));
      CHECK(fitted.radius == shell.radius);
      CHECK(fitted.orientation == shell.orientation);
    } catch (const MinkError& e) {
      CHECK(e.code() == Errc::degenerate_configuration);  // repeated points
    }
  }
}

TEST_CASE("hyperboloid equivariance under Poincare maps") {
  Rng rng(53);
  for (int i = 0; i < 150; ++i) {
    int n = static_cast<int>(rng.int_in(1, 3));
    AffineMap<Rational> f = random_poincare(rng.u64(), n);
    Vec<Rational> v = rng.event(n, 32, 4);
    Rational r = pow2q(static_cast<int>(rng.int_in(-2, 2)));
    Vec<Rational> p = v + r * sample_unit_shell_point(rng, n, rng.coin());
    Hyperboloid<Rational> h{v, r};
    Hyperboloid<Rational> fh{apply(f, v), r};
    CHECK(on_hyperboloid(h, p));
    CHECK(on_hyperboloid(fh, apply(f, p)));
  }
}
