#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mink/transform.hpp"

namespace mink {

/// Deterministic random source. Draws go through the raw mt19937_64 output
/// stream only, so identical seeds reproduce identical values on every
/// platform (std::uniform_int_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  /// Uniform-ish integer in [lo, hi], inclusive. Modulo bias is irrelevant
  /// for sampling purposes here.
  long int_in(long lo, long hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<long>(u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return (u64() & 1ull) != 0; }

  /// Rational with numerator in [-num_bound, num_bound] and denominator in
  /// [1, den_bound].
  Rational rational(long num_bound = 1024, long den_bound = 32) {
    return rat(int_in(-num_bound, num_bound), int_in(1, den_bound));
  }

  Rational nonzero_rational(long num_bound = 1024, long den_bound = 32) {
    Rational r = rational(num_bound, den_bound);
    while (sgn(r) == 0) r = rational(num_bound, den_bound);
    return r;
  }

  Vec<Rational> event(int n, long num_bound = 1024, long den_bound = 32) {
    Vec<Rational> v(n + 1);
    for (Index i = 0; i <= n; ++i) v(i) = rational(num_bound, den_bound);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

/// Per-trial independent stream: splitmix64 of the pair (seed, stream).
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return Rng(x);
}

/// Rational boost in the (t, x_axis) plane: cosh = (p^2+q^2)/(p^2-q^2),
/// sinh = 2pq/(p^2-q^2) for integers p > q >= 1.
inline Mat<Rational> pq_boost(Index dim, Index axis, long p, long q) {
  Rational den = rat(p * p - q * q);
  Rational c = rat(p * p + q * q) / den;
  Rational s = rat(2 * p * q) / den;
  Mat<Rational> m = Mat<Rational>::Identity(dim, dim);
  m(0, 0) = c;
  m(0, axis) = s;
  m(axis, 0) = s;
  m(axis, axis) = c;
  return m;
}

inline Mat<Rational> random_pq_boost(Index dim, Rng& rng) {
  long q = rng.int_in(1, 6);
  long p = q + rng.int_in(1, 6);
  Index axis = dim > 2 ? rng.int_in(1, dim - 1) : 1;
  Mat<Rational> b = pq_boost(dim, axis, p, q);
  return b;
}

/// Rational special-orthogonal spatial block from the Cayley transform of a
/// random skew matrix, embedded as diag(1, R).
inline Mat<Rational> random_cayley_rotation(Index dim, Rng& rng) {
  const Index n = dim - 1;
  Mat<Rational> skew = Mat<Rational>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Rational x = rng.rational(4, 4);
      skew(i, j) = x;
      skew(j, i) = -x;
    }
  Mat<Rational> id = Mat<Rational>::Identity(n, n);
  Eigen::FullPivLU<Mat<Rational>> lu(Mat<Rational>(id + skew));
  Mat<Rational> r = Mat<Rational>(id - skew) * lu.inverse();
  Mat<Rational> block = Mat<Rational>::Identity(dim, dim);
  block.block(1, 1, n, n) = r;
  return block;
}

/// Rational unit spatial direction, as the first column of a Cayley block.
inline Vec<Rational> random_unit_spatial(int n, Rng& rng) {
  if (n == 1) {
    Vec<Rational> v(1);
    v(0) = rng.coin() ? rat(1) : rat(-1);
    return v;
  }
  Mat<Rational> rot = random_cayley_rotation(n + 1, rng);
  Vec<Rational> v(n);
  for (Index i = 0; i < n; ++i) v(i) = rot(i + 1, 1);
  if (rng.coin()) v = -v;
  return v;
}

inline Mat<Rational> random_spatial_reflection(Index dim, Rng& rng) {
  Mat<Rational> m = Mat<Rational>::Identity(dim, dim);
  Index axis = dim > 2 ? rng.int_in(1, dim - 1) : 1;
  m(axis, axis) = rat(-1);
  return m;
}

inline Mat<Rational> time_reversal(Index dim) {
  Mat<Rational> m = Mat<Rational>::Identity(dim, dim);
  m(0, 0) = rat(-1);
  return m;
}

inline Mat<Rational> random_shear(Index dim, Rng& rng) {
  Mat<Rational> m = Mat<Rational>::Identity(dim, dim);
  Index i = rng.int_in(0, dim - 1);
  Index j = rng.int_in(0, dim - 1);
  if (i == j) j = (j + 1) % dim;
  m(i, j) = rng.nonzero_rational(3, 2);
  return m;
}

/// Random exact Poincare map: up to six factors drawn from rational boosts,
/// Cayley rotations, coordinate reflections, time reversal and rational
/// translations. Deterministic per seed.
inline AffineMap<Rational> random_poincare(std::uint64_t seed, int n,
                                           long size_bound = 16) {
  Rng rng = derive_rng(seed, 0x706f696e63617265ull);
  const Index dim = n + 1;
  AffineMap<Rational> f = AffineMap<Rational>::identity(dim);
  int factors = static_cast<int>(rng.int_in(1, 6));
  for (int i = 0; i < factors; ++i) {
    switch (rng.int_in(0, 4)) {
      case 0:
        f = compose(linear_map(random_pq_boost(dim, rng)), f);
        break;
      case 1:
        if (n >= 2) f = compose(linear_map(random_cayley_rotation(dim, rng)), f);
        break;
      case 2:
        f = compose(linear_map(random_spatial_reflection(dim, rng)), f);
        break;
      case 3:
        f = compose(linear_map(time_reversal(dim)), f);
        break;
      default:
        f = compose(translation_map(rng.event(n, size_bound, 8)), f);
        break;
    }
  }
  return f;
}

/// Random orthochronous Poincare map (no time reversal factor).
inline AffineMap<Rational> random_orthochronous_poincare(std::uint64_t seed,
                                                         int n,
                                                         long size_bound = 16) {
  Rng rng = derive_rng(seed, 0x6f72746870ull);
  const Index dim = n + 1;
  AffineMap<Rational> f = AffineMap<Rational>::identity(dim);
  int factors = static_cast<int>(rng.int_in(1, 6));
  for (int i = 0; i < factors; ++i) {
    switch (rng.int_in(0, 3)) {
      case 0:
        f = compose(linear_map(random_pq_boost(dim, rng)), f);
        break;
      case 1:
        if (n >= 2) f = compose(linear_map(random_cayley_rotation(dim, rng)), f);
        break;
      case 2:
        f = compose(linear_map(random_spatial_reflection(dim, rng)), f);
        break;
      default:
        f = compose(translation_map(rng.event(n, size_bound, 8)), f);
        break;
    }
  }
  return f;
}

/// Random affine map: the Poincare factor pool extended with dyadic
/// dilations and shears, so decompose may legitimately fail.
inline AffineMap<Rational> random_affine(std::uint64_t seed, int n,
                                         long size_bound = 16) {
  Rng rng = derive_rng(seed, 0x616666696e65ull);
  const Index dim = n + 1;
  AffineMap<Rational> f = AffineMap<Rational>::identity(dim);
  int factors = static_cast<int>(rng.int_in(1, 6));
  for (int i = 0; i < factors; ++i) {
    switch (rng.int_in(0, 6)) {
      case 0:
        f = compose(linear_map(random_pq_boost(dim, rng)), f);
        break;
      case 1:
        if (n >= 2) f = compose(linear_map(random_cayley_rotation(dim, rng)), f);
        break;
      case 2:
        f = compose(linear_map(random_spatial_reflection(dim, rng)), f);
        break;
      case 3:
        f = compose(linear_map(time_reversal(dim)), f);
        break;
      case 4: {
        int e = static_cast<int>(rng.int_in(-3, 3));
        if (e == 0) e = 1;
        Mat<Rational> d =
            Mat<Rational>::Identity(dim, dim) * pow2q(e);
        f = compose(linear_map(d), f);
        break;
      }
      case 5:
        f = compose(linear_map(random_shear(dim, rng)), f);
        break;
      default:
        f = compose(translation_map(rng.event(n, size_bound, 8)), f);
        break;
    }
  }
  return f;
}

/// Random exact composition of Poincare factors and dyadic dilations, for
/// decomposition round trips; stays inside the extended group.
inline AffineMap<Rational> random_extended(std::uint64_t seed, int n,
                                           long size_bound = 16) {
  Rng rng = derive_rng(seed, 0x657874ull);
  AffineMap<Rational> f = random_poincare(rng.u64(), n, size_bound);
  const Index dim = n + 1;
  int e = static_cast<int>(rng.int_in(-3, 3));
  if (e != 0) {
    Mat<Rational> d = Mat<Rational>::Identity(dim, dim) * pow2q(e);
    f = compose(linear_map(d), f);
  }
  if (rng.coin()) f = compose(f, translation_map(rng.event(n, size_bound, 8)));
  return f;
}

}  // namespace mink
