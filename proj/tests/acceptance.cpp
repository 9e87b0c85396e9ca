// End-to-end acceptance suite. Each criterion prints one pass/fail line;
// the process exits nonzero if any fails. Deterministic for a fixed seed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mink/certify.hpp"
#include "mink/json_io.hpp"

using namespace mink;

namespace {

constexpr std::uint64_t kSeed = 20240901;

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

// 1. Singleton locus: singleton_locus_check(v, r) <=> Q(v) = 4 r^2 for
//    n in {1,2,3}, r in {1/2, 1, 2}, 500 centers per causal class plus 500
//    exact locus points, rational backend, zero mismatches.
bool criterion_lemma2(std::string& msg) {
  long mismatches = 0, checked = 0;
  const Rational radii[3] = {rat(1, 2), rat(1), rat(2)};
  for (int n = 1; n <= 3; ++n) {
    for (const Rational& r : radii) {
      for (int cls = 0; cls < 4; ++cls) {
        for (int i = 0; i < 500; ++i) {
          Rng rng = derive_rng(kSeed, 1000000ull * n + 10000ull * cls + i +
                                          static_cast<std::uint64_t>(
                                              1000000000.0 * r.get_d()));
          Vec<Rational> v;
          switch (cls) {
            case 0: v = suites::random_spacelike(rng, n); break;
            case 1: v = suites::random_lightlike(rng, n); break;
            case 2: v = suites::random_timelike(rng, n, rat(1, 128)); break;
            default:
              v = Vec<Rational>(Rational(2 * r) *
                                sample_unit_shell_point(rng, n, rng.coin()));
              break;
          }
          bool expected = quadratic_form(v) == 4 * r * r;
          if (singleton_locus_check(v, r) != expected) ++mismatches;
          ++checked;
        }
      }
    }
  }
  msg = std::to_string(checked) + " centers, " + std::to_string(mismatches) +
        " mismatches";
  return mismatches == 0;
}

// 2. Light-likeness criterion: 2000 pairs per n in {1,2,3} with time-like
//    gaps >= 2^-7, e range [-8, 8]; agreement with classify_pair and every
//    witness hyperboloid re-verified.
bool criterion_prop1(std::string& msg) {
  long mismatches = 0, bad_witness = 0, checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 2000; ++i) {
      Rng rng = derive_rng(kSeed + 1, 100000ull * n + i);
      Vec<Rational> u = rng.event(n, 64, 8);
      Vec<Rational> d;
      switch (i % 3) {
        case 0: d = suites::random_spacelike(rng, n); break;
        case 1: d = suites::random_lightlike(rng, n); break;
        default: d = suites::random_timelike(rng, n, pow4q(-7)); break;
      }
      Vec<Rational> w = u + d;
      bool expect_light = classify_pair(u, w) == CausalClass::Lightlike;
      if (lightlike_by_hyperboloid_criterion(u, w, -8, 8) != expect_light)
        ++mismatches;
      if (!expect_light) {
        auto e = max_feasible_exponent(u, w, -8, 8);
        if (!e) {
          ++bad_witness;
        } else {
          auto h = hyperboloid_through_pair(u, w, *e);
          if (!on_hyperboloid(h, widen_vec(u)) ||
              !on_hyperboloid(h, widen_vec(w)))
            ++bad_witness;
        }
      }
      ++checked;
    }
  }
  msg = std::to_string(checked) + " pairs, " + std::to_string(mismatches) +
        " mismatches, " + std::to_string(bad_witness) + " bad witnesses";
  return mismatches == 0 && bad_witness == 0;
}

// 3. Same shell <=> space-like: 1000 same-hyperboloid point pairs per n.
bool criterion_prop3(std::string& msg) {
  long mismatches = 0, checked = 0;
  for (int n = 1; n <= 3; ++n) {
    long done = 0;
    for (std::uint64_t i = 0; done < 1000; ++i) {
      Rng rng = derive_rng(kSeed + 2, 100000ull * n + i);
      Vec<Rational> center = rng.event(n, 64, 8);
      Rational r = pow2q(static_cast<int>(rng.int_in(-2, 2)));
      Hyperboloid<Rational> h{center, r};
      Vec<Rational> p =
          center + r * sample_unit_shell_point(rng, n, rng.coin());
      Vec<Rational> q =
          center + r * sample_unit_shell_point(rng, n, rng.coin());
      if (vec_equal(p, q)) continue;
      bool same = same_shell(h, p, q);
      bool spacelike = classify_pair(p, q) == CausalClass::Spacelike;
      if (same != spacelike) ++mismatches;
      ++done;
      ++checked;
    }
  }
  msg = std::to_string(checked) + " pairs, " + std::to_string(mismatches) +
        " mismatches";
  return mismatches == 0;
}

// 4. Shell disjointness <=> opposite orientation for space-like separated
//    centers, radii 2^e, e in [-3,3], 1000 pairs per n in {1,2,3}.
bool criterion_prop4(std::string& msg) {
  long mismatches = 0, checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 1000; ++i) {
      Rng rng = derive_rng(kSeed + 3, 100000ull * n + i);
      Vec<Rational> c1 = rng.event(n, 64, 8);
      Vec<Rational> c2 = c1 + suites::random_spacelike(rng, n);
      Shell<Rational> a = make_shell(
          c1, pow2q(static_cast<int>(rng.int_in(-3, 3))),
          rng.coin() ? Orientation::Forward : Orientation::Backward);
      Shell<Rational> b = make_shell(
          c2, pow2q(static_cast<int>(rng.int_in(-3, 3))),
          rng.coin() ? Orientation::Forward : Orientation::Backward);
      if (shells_disjoint(a, b) != (a.orientation != b.orientation))
        ++mismatches;
      ++checked;
    }
  }
  msg = std::to_string(checked) + " shell pairs, " +
        std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

// 5. Betweenness falsifier: per n in {1,2}, 200 non-between triples give a
//    re-verified disjoint opposite pair, 200 between triples give absent.
bool criterion_prop5(std::string& msg) {
  long anomalies = 0, checked = 0;
  for (int n = 1; n <= 2; ++n) {
    for (int i = 0; i < 400; ++i) {
      Rng rng = derive_rng(kSeed + 4, 100000ull * n + i);
      bool between = (i % 2) == 0;
      Vec<Rational> u, v, w;
      suites::random_spacelike_triple(rng, n, between, u, v, w);
      std::optional<ShellPairWitness<Rational>> pair;
      try {
        pair = betweenness_shell_falsifier(u, v, w, -8, 8);
      } catch (const MinkError&) {
        ++anomalies;  // search exhausted: reported, never converted
        ++checked;
        continue;
      }
      if (between) {
        if (pair) ++anomalies;
      } else if (!pair) {
        ++anomalies;
      } else {
        bool ok = pair->c.orientation != pair->k.orientation &&
                  shells_disjoint(pair->c, pair->k) &&
                  on_shell(pair->c, widen_vec(u)) &&
                  on_shell(pair->c, widen_vec(w)) &&
                  on_shell(pair->k, widen_vec(v));
        if (!ok) ++anomalies;
      }
      ++checked;
    }
  }
  msg = std::to_string(checked) + " triples, " + std::to_string(anomalies) +
        " anomalies";
  return anomalies == 0;
}

// 6. Decomposition: 500 random extended-group compositions recompose
//    exactly (rational) and within 1e-9 relative (float64); 100 shears fail
//    with NotInExtendedGroup.
bool criterion_decompose(std::string& msg) {
  long failures = 0;
  for (int i = 0; i < 500; ++i) {
    Rng rng = derive_rng(kSeed + 5, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 2));
    AffineMap<Rational> f = random_extended(rng.u64(), n);
    try {
      Decomposition<Rational> d = decompose(f);
      AffineMap<Rational> back = recompose(d);
      if (!mat_equal(back.A, f.A) || !vec_equal(back.b, f.b)) ++failures;
      AffineMap<double> fd = to_double_map(f);
      Decomposition<double> dd = decompose(fd);
      AffineMap<double> backd = recompose(dd);
      if (!mat_equal(backd.A, fd.A, 1e-9) || !vec_equal(backd.b, fd.b, 1e-9))
        ++failures;
    } catch (const MinkError&) {
      ++failures;
    }
  }
  long shear_failures = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = derive_rng(kSeed + 6, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 2));
    AffineMap<Rational> f =
        make_affine(random_shear(n + 1, rng), rng.event(n, 8, 4));
    try {
      decompose(f);
      ++shear_failures;
    } catch (const MinkError& e) {
      if (e.code() != Errc::not_in_extended_group) ++shear_failures;
    }
  }
  msg = "500 round trips (" + std::to_string(failures) + " failures), 100 shears (" +
        std::to_string(shear_failures) + " not rejected)";
  return failures == 0 && shear_failures == 0;
}

// 7. Known-answer matrix: 7 transforms x 3 surfaces, >= 1000 trials each.
bool criterion_known_answer(std::string& msg) {
  const int n = 3;
  const Index dim = n + 1;
  const long trials = 1000;
  Rng rng = derive_rng(kSeed + 7, 0);

  Mat<Rational> reflection = Mat<Rational>::Identity(dim, dim);
  reflection(1, 1) = rat(-1);
  Mat<Rational> shear = Mat<Rational>::Identity(dim, dim);
  shear(0, 1) = rat(1);

  struct Row {
    const char* name;
    AffineMap<Rational> map;
    Verdict hyperboloid, forward, corollary;
  };
  const Verdict P = Verdict::Pass, R = Verdict::Refuted;
  std::vector<Row> rows = {
      {"identity", AffineMap<Rational>::identity(dim), P, P, P},
      {"time_reversal", linear_map(time_reversal(dim)), P, R, P},
      {"spatial_reflection", linear_map(reflection), P, P, P},
      {"rational_boost", linear_map(pq_boost(dim, 1, 3, 1)), P, P, P},
      {"dilation_2",
       linear_map(Mat<Rational>(rat(2) * Mat<Rational>::Identity(dim, dim))), R, R,
       R},
      {"shear", linear_map(shear), R, R, R},
      {"translation", translation_map(rng.event(n, 16, 4)), P, P, P},
  };
  long wrong = 0;
  std::string detail;
  for (const auto& row : rows) {
    auto f = CandidateMap<Rational>::affine(row.map);
    Verdict h =
        certify_hyperboloid_preservation(f, n, trials, kSeed + 8).verdict;
    Verdict fw = certify_forward_preservation(f, n, trials, kSeed + 8).verdict;
    Verdict co =
        check_corollary(f, -4, 4, n, trials / 9 + 1, kSeed + 8).verdict;
    if (h != row.hyperboloid || fw != row.forward || co != row.corollary) {
      ++wrong;
      detail += std::string(" [") + row.name + "]";
    }
  }
  msg = "21 verdicts, " + std::to_string(wrong) + " rows wrong" + detail;
  return wrong == 0;
}

// 8. Corollary: 100 random Poincare maps, e in [-4,4], 200 samples per
//    exponent, zero violations.
bool criterion_corollary(std::string& msg) {
  long violations = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = derive_rng(kSeed + 9, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 2));
    auto f = CandidateMap<Rational>::affine(random_poincare(rng.u64(), n));
    if (check_corollary(f, -4, 4, n, 200, kSeed + 10 + i).verdict !=
        Verdict::Pass)
      ++violations;
  }
  msg = "100 maps x 9 exponents x 200 samples, " +
        std::to_string(violations) + " violations";
  return violations == 0;
}

// 9. Cross-backend agreement: 1000 well-conditioned instances per predicate,
//    rational and float64 backends agree on every boolean/enum output.
bool criterion_cross_backend(std::string& msg) {
  long disagreements = 0, checked = 0;
  const Rational margin = rat(1, 1000000);

  auto conditioned = [&](const Rational& value, const Rational& scale) {
    return sgn(value) == 0 || abs(value) >= margin * (1 + abs(scale));
  };

  // classify_vector / classify_pair / classify_line
  for (int i = 0; i < 1000; ++i) {
    Rng rng = derive_rng(kSeed + 11, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 2));
    Vec<Rational> v;
    Rational q, scale;
    do {
      switch (i % 3) {
        case 0: v = suites::random_spacelike(rng, n); break;
        case 1: v = suites::random_lightlike(rng, n); break;
        default: v = suites::random_timelike(rng, n, rat(1, 64)); break;
      }
      q = quadratic_form(v);
      scale = v(0) * v(0) + spatial_norm_squared(v);
    } while (!conditioned(q, scale));
    if (classify_vector(v) != classify_vector(to_double_vec(v)))
      ++disagreements;
    ++checked;
  }

  // singleton_locus_check
  for (int i = 0; i < 1000; ++i) {
    Rng rng = derive_rng(kSeed + 12, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 2));
    Rational r = pow2q(static_cast<int>(rng.int_in(-1, 1)));
    Vec<Rational> v;
    if (i % 2 == 0) {
      v = Vec<Rational>(Rational(2 * r) * sample_unit_shell_point(rng, n, rng.coin()));
    } else {
      Rational q, scale;
      do {
        v = rng.event(n, 32, 4);
        q = quadratic_form(v) - 4 * r * r;
        scale = v(0) * v(0) + spatial_norm_squared(v);
      } while (!conditioned(q, scale));
    }
    bool exact = singleton_locus_check(v, r);
    bool approx = singleton_locus_check(to_double_vec(v), r.get_d());
    if (exact != approx) ++disagreements;
    ++checked;
  }

  // is_between (well separated from the a in {0,1} boundaries)
  for (int i = 0; i < 1000; ++i) {
    Rng rng = derive_rng(kSeed + 13, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 2));
    Vec<Rational> u = rng.event(n, 32, 4);
    Vec<Rational> d = suites::random_spacelike(rng, n);
    Vec<Rational> w = u + d;
    Rational a = rat(rng.int_in(-12, 20), 8);
    if (sgn(a) == 0 || a == 1 || abs(a) < rat(1, 16) ||
        abs(a - 1) < rat(1, 16)) {
      a = rat(1, 2);
    }
    Vec<Rational> v = u + a * d;
    bool exact = is_between(u, v, w);
    bool approx =
        is_between(to_double_vec(u), to_double_vec(v), to_double_vec(w));
    if (exact != approx) ++disagreements;
    ++checked;
  }

  // is_lorentz / is_orthochronous / classify_transform
  for (int i = 0; i < 1000; ++i) {
    Rng rng = derive_rng(kSeed + 14, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 2));
    AffineMap<Rational> f;
    switch (i % 3) {
      case 0: f = random_poincare(rng.u64(), n); break;
      case 1: f = random_affine(rng.u64(), n); break;
      default: f = random_extended(rng.u64(), n); break;
    }
    AffineMap<double> fd = to_double_map(f);
    if (is_lorentz(f.A) != is_lorentz(fd.A)) ++disagreements;
    if (classify_transform(f) != classify_transform(fd)) ++disagreements;
    ++checked;
  }

  // shells_disjoint on well-separated shells
  for (int i = 0; i < 1000; ++i) {
    Rng rng = derive_rng(kSeed + 15, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 1));
    Vec<Rational> c1 = rng.event(n, 32, 4);
    Vec<Rational> c2 = c1 + suites::random_spacelike(rng, n);
    Shell<Rational> a =
        make_shell(c1, pow2q(static_cast<int>(rng.int_in(-1, 1))),
                   rng.coin() ? Orientation::Forward : Orientation::Backward);
    Shell<Rational> b =
        make_shell(c2, pow2q(static_cast<int>(rng.int_in(-1, 1))),
                   rng.coin() ? Orientation::Forward : Orientation::Backward);
    bool exact = shells_disjoint(a, b);
    Shell<double> ad{to_double_vec(a.center), a.radius.get_d(), a.orientation,
                     {}};
    Shell<double> bd{to_double_vec(b.center), b.radius.get_d(), b.orientation,
                     {}};
    bool approx = shells_disjoint(ad, bd);
    if (exact != approx) ++disagreements;
    ++checked;
  }

  // intersect_same_radius away from the tangency boundary
  for (int i = 0; i < 1000; ++i) {
    Rng rng = derive_rng(kSeed + 16, i);
    int n = 1 + static_cast<int>(rng.int_in(0, 2));
    Rational r = pow2q(static_cast<int>(rng.int_in(-1, 1)));
    Vec<Rational> c2;
    Rational gap, scale;
    do {
      c2 = rng.event(n, 32, 4);
      gap = quadratic_form(c2) - 4 * r * r;
      scale = c2(0) * c2(0) + spatial_norm_squared(c2);
    } while (!conditioned(quadratic_form(c2), scale) ||
             !conditioned(gap, scale));
    Hyperboloid<Rational> a{Vec<Rational>::Zero(n + 1), r};
    Hyperboloid<Rational> b{c2, r};
    Hyperboloid<double> ad{Vec<double>::Zero(n + 1), r.get_d()};
    Hyperboloid<double> bd{to_double_vec(c2), r.get_d()};
    if (intersect_same_radius(a, b) != intersect_same_radius(ad, bd))
      ++disagreements;
    ++checked;
  }

  msg = std::to_string(checked) + " instances, " +
        std::to_string(disagreements) + " disagreements";
  return disagreements == 0;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 singleton locus (n=1..3, r=1/2,1,2)", criterion_lemma2},
      {"2 light-likeness criterion + witnesses", criterion_prop1},
      {"3 same shell <=> space-like", criterion_prop3},
      {"4 shell disjointness <=> orientation", criterion_prop4},
      {"5 betweenness falsifier", criterion_prop5},
      {"6 decomposition round trips + shears", criterion_decompose},
      {"7 known-answer verdict matrix", criterion_known_answer},
      {"8 dyadic dilate preservation", criterion_corollary},
      {"9 cross-backend agreement", criterion_cross_backend},
  };
  int failures = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string msg;
    bool ok = false;
    try {
      ok = c.run(msg);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    std::printf("[%s] criterion %s — %s (%.1fs)\n", ok ? "PASS" : "FAIL",
                c.name.c_str(), msg.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}
