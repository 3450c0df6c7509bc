#include <doctest.h>

#include <cmath>

#include "ctb/linalg.hpp"
#include "helpers.hpp"

using namespace ctb;
using namespace ctb::testing;

TEST_CASE("cholesky on hand-checkable matrices") {
  CHECK(cholesky(SymMatrix::identity(2)).lower[0][0] == doctest::Approx(1.0));

  SymMatrix s(2);
  s.set(0, 0, 4.0);
  s.set(1, 0, 2.0);
  s.set(1, 1, 2.0);
  const CholeskyFactor f = cholesky(s);
  CHECK(f.lower[0][0] == doctest::Approx(2.0));
  CHECK(f.lower[1][0] == doctest::Approx(1.0));
  CHECK(f.lower[1][1] == doctest::Approx(1.0));

  SymMatrix bad(2);
  bad.set(0, 0, 1.0);
  bad.set(1, 0, 2.0);
  bad.set(1, 1, 1.0);  // eigenvalues 3 and -1
  CHECK_THROWS_AS(cholesky(bad), NotPositiveDefinite);
}

TEST_CASE("cholesky reconstructs the source matrix") {
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + int(rng.uniform() * 5);
    const SymMatrix s = random_spd(rng, n);
    const CholeskyFactor f = cholesky(s);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        double v = 0.0;
        for (int k = 0; k < n; ++k) v += f.lower[i][k] * f.lower[j][k];
        err = std::max(err, std::abs(v - s(i, j)));
      }
    CHECK(err <= 1e-10 * (1.0 + s.max_abs_entry()));
  }
}

TEST_CASE("solve_spd") {
  CHECK(solve_spd(SymMatrix::identity(2), {3.0, -1.0}) ==
        Vector{3.0, -1.0});
  const Vector x = solve_spd(SymMatrix::diagonal({2.0, 4.0}), {2.0, 4.0});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(solve_spd(SymMatrix::identity(2), {1.0}), DimensionMismatch);

  CounterRng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + int(rng.uniform() * 5);
    const SymMatrix s = random_spd(rng, n);
    const Vector v = random_gaussian(rng, n);
    const Vector sol = solve_spd(s, v);
    CHECK(norm(sub(s.apply(sol), v)) <= 1e-9 * norm(v));
  }
}

TEST_CASE("sym_eigen on simple matrices") {
  const EigenDecomposition d = sym_eigen(SymMatrix::diagonal({3.0, 1.0}));
  CHECK(d.values[0] == doctest::Approx(3.0));
  CHECK(d.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors[0][0]) == doctest::Approx(1.0));

  SymMatrix flip(2);
  flip.set(1, 0, 1.0);
  const EigenDecomposition e = sym_eigen(flip);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(-1.0));
}

TEST_CASE("sym_eigen reconstruction and orthonormality") {
  CounterRng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + int(rng.uniform() * 5);
    const SymMatrix s = random_symmetric(rng, n, 2.0);
    const EigenDecomposition e = sym_eigen(s);
    const SymMatrix r = e.reconstruct();
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) err = std::max(err, std::abs(r(i, j) - s(i, j)));
    CHECK(err <= 1e-9 * (1.0 + s.max_abs_entry()));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b <= a; ++b)
        CHECK(std::abs(dot(e.vectors[a], e.vectors[b]) - (a == b ? 1.0 : 0.0)) <=
              1e-10);
  }
}

TEST_CASE("matrix_sqrt") {
  const SymMatrix r = matrix_sqrt(SymMatrix::diagonal({4.0, 9.0}));
  CHECK(r(0, 0) == doctest::Approx(2.0));
  CHECK(r(1, 1) == doctest::Approx(3.0));
  CHECK(r(1, 0) == doctest::Approx(0.0));

  const SymMatrix id = matrix_sqrt(SymMatrix::identity(3));
  CHECK(id(0, 0) == doctest::Approx(1.0));
  CHECK(id(2, 1) == doctest::Approx(0.0));

  CHECK_THROWS_AS(matrix_sqrt(SymMatrix::diagonal({1.0, -1.0})),
                  NotPositiveDefinite);

  CounterRng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + int(rng.uniform() * 4);
    const SymMatrix a = random_spd(rng, n);
    const SymMatrix b = matrix_sqrt(a);
    // squaring is the oracle, and B must commute with A
    double sq_err = 0.0, comm_err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double bb = 0.0, ab = 0.0, ba = 0.0;
        for (int k = 0; k < n; ++k) {
          bb += b(i, k) * b(k, j);
          ab += a(i, k) * b(k, j);
          ba += b(i, k) * a(k, j);
        }
        sq_err += (bb - a(i, j)) * (bb - a(i, j));
        comm_err = std::max(comm_err, std::abs(ab - ba));
      }
    CHECK(std::sqrt(sq_err) <= 1e-8 * a.frobenius_norm());
    CHECK(comm_err <= 1e-8 * (1.0 + a.max_abs_entry()));
  }
}

TEST_CASE("svec and smat") {
  const Vector v = svec(SymMatrix::identity(2));
  CHECK(v == Vector{1.0, 0.0, 1.0});

  SymMatrix ones(2);
  ones.set(0, 0, 1.0);
  ones.set(1, 0, 1.0);
  ones.set(1, 1, 1.0);
  const Vector w = svec(ones);
  CHECK(w[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(dot(w, w) == doctest::Approx(4.0));  // trace(S^2)

  CHECK_THROWS_AS(smat({1.0, 2.0}), LengthNotTriangular);

  CounterRng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + int(rng.uniform() * 5);
    const SymMatrix s = random_symmetric(rng, n);
    const SymMatrix t = random_symmetric(rng, n);
    // round-trip: diagonals exact, off-diagonals within one ulp of the
    // sqrt(2) scaling
    const SymMatrix back = smat(svec(s));
    for (int i = 0; i < n; ++i) {
      CHECK(back(i, i) == s(i, i));
      for (int j = 0; j < i; ++j)
        CHECK(std::abs(back(i, j) - s(i, j)) <=
              std::abs(s(i, j)) * 0x1.0p-52);
    }
    double trace_st = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) trace_st += s(i, k) * t(k, i);
    CHECK(std::abs(dot(svec(s), svec(t)) - trace_st) <= 1e-12 * (1.0 + std::abs(trace_st)));
  }
}

TEST_CASE("quadratic_form") {
  CHECK(quadratic_form({1.0, 0.0}, SymMatrix::diagonal({2.0, 3.0})) ==
        doctest::Approx(2.0));
  CHECK(quadratic_form({0.0, 0.0}, SymMatrix::identity(2)) == doctest::Approx(0.0));
  SymMatrix s(2);
  s.set(0, 0, 2.0);
  s.set(1, 0, -1.0);
  s.set(1, 1, 2.0);
  CHECK(quadratic_form({1.0, 1.0}, s) == doctest::Approx(2.0));
  CHECK_THROWS_AS(quadratic_form({1.0}, s), DimensionMismatch);
}

TEST_CASE("positive definiteness agrees across factorizations") {
  CounterRng rng(16);
  int pd_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + int(rng.uniform() * 5);
    SymMatrix s = random_symmetric(rng, n, 1.5);
    for (int i = 0; i < n; ++i) s.set(i, i, s(i, i) + rng.uniform() * 2.0);
    bool chol_ok = true;
    try {
      (void)cholesky(s);
    } catch (const NotPositiveDefinite&) {
      chol_ok = false;
    }
    const EigenDecomposition e = sym_eigen(s);
    const bool eig_ok = e.values.back() > 1e-12 * std::max(1.0, std::abs(e.values.front()));
    if (chol_ok != eig_ok) {
      // only admissible near the PD boundary
      CHECK(std::abs(e.values.back()) <= 1e-8 * std::max(1.0, std::abs(e.values.front())));
    }
    if (chol_ok) ++pd_count;

    if (chol_ok) {
      const Vector v = random_gaussian(rng, n);
      if (norm(v) > 1e-12) CHECK(quadratic_form(v, s) > 0.0);
    }
  }
  CHECK(pd_count > 10);  // the battery exercises both outcomes
}

TEST_CASE("general solver and singular detection") {
  Matrix m(2, 2);
  m.at(0, 0) = 2.0;
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  m.at(1, 1) = 3.0;
  const Vector x = solve_general(m, {5.0, 10.0});
  CHECK(norm(sub(m.apply(x), {5.0, 10.0})) <= 1e-12);

  Matrix sing(2, 2);
  sing.at(0, 0) = 1.0;
  sing.at(0, 1) = 2.0;
  sing.at(1, 0) = 2.0;
  sing.at(1, 1) = 4.0;
  CHECK_THROWS_AS(solve_general(sing, {1.0, 1.0}), SingularMap);
}
