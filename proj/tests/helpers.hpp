#pragma once

#include <cmath>

#include "ctb/linalg.hpp"
#include "ctb/rng.hpp"

namespace ctb::testing {

inline Vector random_vector(CounterRng& rng, int n, double lo = -1.0,
                            double hi = 1.0) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * rng.uniform();
  return v;
}

inline Vector random_gaussian(CounterRng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

inline SymMatrix random_symmetric(CounterRng& rng, int n, double scale = 1.0) {
  SymMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      s.set(i, j, scale * (2.0 * rng.uniform() - 1.0));
  return s;
}

// G^T G + ridge I: positive definite with a controlled conditioning floor.
inline SymMatrix random_spd(CounterRng& rng, int n, double ridge = 0.1) {
  std::vector<Vector> g(n);
  for (int i = 0; i < n; ++i) g[i] = random_gaussian(rng, n);
  SymMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += g[k][i] * g[k][j];
      s.set(i, j, v / n + (i == j ? ridge : 0.0));
    }
  return s;
}

// Positive definite with entrywise-nonnegative inverse: the inverse is a
// diagonally dominant nonnegative matrix I + B.
inline SymMatrix random_spd_with_nonnegative_inverse(CounterRng& rng, int n) {
  SymMatrix ainv(n);
  Vector rowsum(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      const double v = rng.uniform();
      ainv.set(i, j, v);
      rowsum[i] += v;
      rowsum[j] += v;
    }
  double maxrow = 0.0;
  for (int i = 0; i < n; ++i) maxrow = std::max(maxrow, rowsum[i]);
  const double shrink = maxrow > 0.0 ? 0.9 / maxrow : 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) ainv.set(i, j, ainv(i, j) * shrink);
    ainv.set(i, i, 1.0);
  }
  return spd_inverse(ainv);
}

// Orthogonal matrix from Gram-Schmidt on a random Gaussian matrix.
inline Matrix random_rotation(CounterRng& rng, int n) {
  std::vector<Vector> cols;
  while (static_cast<int>(cols.size()) < n) {
    Vector v = random_gaussian(rng, n);
    for (const auto& c : cols) v = sub(v, scaled(c, dot(c, v)));
    const double len = norm(v);
    if (len < 1e-8) continue;
    cols.push_back(scaled(v, 1.0 / len));
  }
  Matrix q(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) q.at(i, j) = cols[j][i];
  return q;
}

inline SymMatrix rotate_spd(const Matrix& q, const SymMatrix& s) {
  const int n = s.order();
  SymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) v += q.at(i, k) * s(k, l) * q.at(j, l);
      out.set(i, j, v);
    }
  return out;
}

}  // namespace ctb::testing
