#include <doctest.h>

#include <cmath>

#include "ctb/stats.hpp"
#include "helpers.hpp"

using namespace ctb;
using namespace ctb::testing;

TEST_CASE("significance lambda on hand-checkable inputs") {
  const double lam =
      significance_lambda({1.0, 1.0}, SymMatrix::identity(2), {0.5});
  CHECK(lam == doctest::Approx(1.0 / std::sqrt(2.0)));

  // doubling the mean halves lambda
  const double half =
      significance_lambda({2.0, 2.0}, SymMatrix::identity(2), {0.5});
  CHECK(half == doctest::Approx(lam / 2.0));

  CHECK_THROWS_AS(significance_lambda({1.0, -1.0}, SymMatrix::identity(2), {0.5}),
                  NonPositiveMean);
  CHECK_THROWS_AS(significance_lambda({1.0, 1.0}, SymMatrix::identity(2), {0.0}),
                  BadAlpha);
  CHECK_THROWS_AS(significance_lambda({1.0, 1.0}, SymMatrix::identity(2), {1.0}),
                  BadAlpha);

  SymMatrix neg_inv(2);  // inverse has negative off-diagonal entries
  neg_inv.set(0, 0, 1.0);
  neg_inv.set(1, 0, 0.5);
  neg_inv.set(1, 1, 1.0);
  CHECK_THROWS_AS(significance_lambda({1.0, 1.0}, neg_inv, {0.5}),
                  InverseNotNonnegative);
}

TEST_CASE("returned lambda makes the bound equal alpha") {
  CounterRng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + int(rng.uniform() * 4);
    const SymMatrix sigma = random_spd_with_nonnegative_inverse(rng, n);
    const Vector mu = random_vector(rng, n, 0.2, 3.0);
    const double alpha = 0.02 + 0.9 * rng.uniform();
    const double lam = significance_lambda(mu, sigma, {alpha});
    const double norm2 = quadratic_form(mu, spd_inverse(sigma));
    CHECK(std::abs(1.0 / (1.0 + lam * lam * norm2) - alpha) <= 1e-12);
  }
}

TEST_CASE("largeness verdict") {
  const SymMatrix id = SymMatrix::identity(2);
  const LargenessReport big = test_large({2.0, 2.0}, {1.0, 1.0}, id, {0.5});
  CHECK(big.verdict == LargenessVerdict::Large);
  CHECK(big.lambda == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(big.min_ratio == doctest::Approx(1.0));
  CHECK(big.alpha == doctest::Approx(0.5));

  const LargenessReport small =
      test_large({1.5, 1.1}, {1.0, 1.0}, id, {0.5});
  CHECK(small.verdict == LargenessVerdict::NotLarge);
  CHECK(small.min_ratio == doctest::Approx(0.1));

  // boundary y = (1 + lambda) mu is declared large
  const double lam = big.lambda;
  const LargenessReport edge =
      test_large({1.0 + lam, 1.0 + lam}, {1.0, 1.0}, id, {0.5});
  CHECK(edge.verdict == LargenessVerdict::Large);

  // the alternative published form is reported for comparison
  CHECK(big.lambda_printed == doctest::Approx(1.0 / 2.0));
}

TEST_CASE("verdict matches the componentwise event") {
  CounterRng rng(62);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + int(rng.uniform() * 3);
    const SymMatrix sigma = random_spd_with_nonnegative_inverse(rng, n);
    const Vector mu = random_vector(rng, n, 0.2, 2.0);
    Vector y = mu;
    for (int i = 0; i < n; ++i) y[i] *= 1.0 + 2.0 * rng.uniform() - 0.3;
    const LargenessReport r = test_large(y, mu, sigma, {0.1});
    bool event = true;
    for (int i = 0; i < n; ++i)
      if (y[i] < (1.0 + r.lambda) * mu[i] - 1e-12) event = false;
    CHECK((r.verdict == LargenessVerdict::Large) == event);
  }
}

TEST_CASE("deviation significance") {
  const auto [norm2, bound] =
      deviation_significance({2.0, 2.0}, {1.0, 1.0}, SymMatrix::identity(2));
  CHECK(norm2 == doctest::Approx(2.0));
  CHECK(bound == doctest::Approx(1.0 / 3.0));

  SymMatrix tri(2);
  tri.set(0, 0, 2.0);
  tri.set(1, 0, -1.0);
  tri.set(1, 1, 2.0);
  // Sigma^{-1} = (1/3)[[2,1],[1,2]], so the standardized norm of (1,1) is 2
  const auto [n2, b2] = deviation_significance({1.0, 1.0}, {0.0, 0.0}, tri);
  CHECK(n2 == doctest::Approx(2.0));
  CHECK(b2 == doctest::Approx(1.0 / 3.0));
  // and a deviation along one axis standardizes to 2/3
  const auto [n1, b1] = deviation_significance({1.0, 1e-9}, {0.0, 0.0}, tri);
  CHECK(n1 == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(b1 == doctest::Approx(3.0 / 5.0).epsilon(1e-6));

  // strict interior required: a 1e-16 coordinate is rejected
  CHECK_THROWS_AS(
      deviation_significance({1.0, 1e-16}, {0.0, 0.0}, SymMatrix::identity(2)),
      DeviationNotPositive);
}

TEST_CASE("rank-one covariance construction") {
  CHECK_NOTHROW(RankOneCovariance({2.0, 2.0}, 0.5, {1.0, 1.0}));
  // D - gamma uu^T loses definiteness when gamma u^T D^{-1} u >= 1
  CHECK_THROWS_AS(RankOneCovariance({1.0, 1.0}, 1.0, {1.0, 1.0}),
                  NotPositiveDefinite);
  CHECK_THROWS_AS(RankOneCovariance({1.0, -1.0}, 0.1, {1.0, 1.0}),
                  NotPositiveDefinite);
  CHECK_THROWS_AS(RankOneCovariance({1.0, 1.0}, -0.1, {1.0, 1.0}), InvalidValue);
  CHECK_THROWS_AS(RankOneCovariance({1.0, 1.0}, 0.1, {-1.0, 1.0}),
                  NegativeEntry);
}

TEST_CASE("minor inverse hand checks") {
  // D = diag(2,2), gamma = 1/2, u = (1,1), J = {0}: (2 - 1/2)^{-1} = 2/3,
  // and the update formula gives 1/2 + (1/2)(1/4)/(3/4) = 2/3
  const RankOneCovariance cov({2.0, 2.0}, 0.5, {1.0, 1.0});
  const SymMatrix one = sherman_morrison_minor_inverse(cov, {0});
  CHECK(one(0, 0) == doctest::Approx(2.0 / 3.0));

  // gamma ~ 0 reduces to the diagonal inverse
  const RankOneCovariance tiny({2.0, 4.0}, 1e-14, {1.0, 1.0});
  const SymMatrix d = sherman_morrison_minor_inverse(tiny, {0, 1});
  CHECK(d(0, 0) == doctest::Approx(0.5));
  CHECK(d(1, 1) == doctest::Approx(0.25));
  CHECK(d(1, 0) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("minor inverse agrees with direct inversion") {
  CounterRng rng(63);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + int(rng.uniform() * 5);
    Vector d(n), u(n);
    for (int i = 0; i < n; ++i) {
      d[i] = 0.5 + 2.0 * rng.uniform();
      u[i] = rng.uniform();
    }
    // shrink gamma until D - gamma uu^T is safely positive definite
    double udu = 0.0;
    for (int i = 0; i < n; ++i) udu += u[i] * u[i] / d[i];
    const double gamma = 0.8 / std::max(udu, 1e-6);
    RankOneCovariance cov(d, gamma, u);

    const int k = 1 + int(rng.uniform() * std::min(n, 4));
    std::vector<int> subset;
    for (int i = 0; i < n && int(subset.size()) < k; ++i)
      if (rng.uniform() < 0.6 || n - i <= k - int(subset.size()))
        subset.push_back(i);

    const SymMatrix sm = sherman_morrison_minor_inverse(cov, subset);
    const int m = int(subset.size());
    SymMatrix minor(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b <= a; ++b)
        minor.set(a, b, (a == b ? d[subset[a]] : 0.0) -
                            gamma * u[subset[a]] * u[subset[b]]);
    const SymMatrix direct = spd_inverse(minor);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b <= a; ++b)
        CHECK(std::abs(sm(a, b) - direct(a, b)) <= 1e-9);
  }
}

TEST_CASE("subset scan ranks standardized deviations") {
  const RankOneCovariance cov({1.0, 1.0}, 0.1, {1.0, 1.0});
  const ScanResult r = coordinate_subset_scan({3.0, 0.1}, {0.0, 0.0}, cov, 1);
  REQUIRE(r.findings.size() == 2);
  CHECK(r.findings[0].subset == std::vector<int>{0});
  CHECK(r.findings[1].subset == std::vector<int>{1});
  CHECK(r.findings[0].bound < r.findings[1].bound);
  CHECK(r.ineligible.empty());
}

TEST_CASE("full-set scan entry reproduces the whole-vector significance") {
  CounterRng rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + int(rng.uniform() * 2);
    Vector d(n), u(n), y(n);
    for (int i = 0; i < n; ++i) {
      d[i] = 1.0 + rng.uniform();
      u[i] = rng.uniform();
      y[i] = 0.2 + rng.uniform();
    }
    double udu = 0.0;
    for (int i = 0; i < n; ++i) udu += u[i] * u[i] / d[i];
    RankOneCovariance cov(d, 0.7 / std::max(udu, 1e-6), u);

    const ScanResult r = coordinate_subset_scan(y, Vector(n, 0.0), cov, n);
    bool found_full = false;
    for (const SubsetFinding& f : r.findings)
      if (int(f.subset.size()) == n) {
        found_full = true;
        const auto [norm2, bound] =
            deviation_significance(y, Vector(n, 0.0), cov.to_sym());
        CHECK(std::abs(f.deviation_norm2 - norm2) <= 1e-10);
        CHECK(std::abs(f.bound - bound) <= 1e-10);
      }
    CHECK(found_full);
  }
}

TEST_CASE("subset scan excludes and lists nonpositive deviations") {
  const RankOneCovariance cov({1.0, 1.0, 1.0}, 0.1, {1.0, 1.0, 1.0});
  const ScanResult r =
      coordinate_subset_scan({1.0, -0.5, 2.0}, {0.0, 0.0, 0.0}, cov, 2);
  // any subset touching coordinate 1 is ineligible
  for (const SubsetFinding& f : r.findings)
    for (int idx : f.subset) CHECK(idx != 1);
  bool listed = false;
  for (const auto& s : r.ineligible)
    if (s == std::vector<int>{1}) listed = true;
  CHECK(listed);
  // findings come back sorted by ascending bound
  for (std::size_t i = 1; i < r.findings.size(); ++i)
    CHECK(r.findings[i - 1].bound <= r.findings[i].bound + 1e-15);

  CHECK_THROWS_AS(coordinate_subset_scan({1.0, 1.0}, {0.0, 0.0},
                                         RankOneCovariance({2.0, 2.0}, 0.1,
                                                           {1.0, 1.0}),
                                         5),
                  KmaxTooLarge);
}

TEST_CASE("adding an eligible coordinate never weakens the subset bound") {
  CounterRng rng(65);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3;
    Vector d(n), u(n), y(n);
    for (int i = 0; i < n; ++i) {
      d[i] = 1.0 + rng.uniform();
      u[i] = rng.uniform();
      y[i] = 0.2 + rng.uniform();
    }
    double udu = 0.0;
    for (int i = 0; i < n; ++i) udu += u[i] * u[i] / d[i];
    RankOneCovariance cov(d, 0.7 / std::max(udu, 1e-6), u);
    const ScanResult r = coordinate_subset_scan(y, Vector(n, 0.0), cov, 3);
    auto bound_of = [&](const std::vector<int>& s) {
      for (const SubsetFinding& f : r.findings)
        if (f.subset == s) return f.bound;
      return -1.0;
    };
    CHECK(bound_of({0, 1}) <= bound_of({0}) + 1e-10);
    CHECK(bound_of({0, 1, 2}) <= bound_of({0, 1}) + 1e-10);
    CHECK(bound_of({0, 2}) <= bound_of({2}) + 1e-10);
  }
}
