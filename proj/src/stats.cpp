#include "ctb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ctb {
namespace {

void check_inverse_nonnegative(const SymMatrix& sigma, const Tolerances& tol) {
  const SymMatrix inv = spd_inverse(sigma, tol);
  for (int i = 0; i < inv.order(); ++i)
    for (int j = 0; j <= i; ++j)
      if (inv(i, j) < -1e-12)
        throw InverseNotNonnegative(
            "covariance inverse has a negative entry at (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
}

void check_strictly_positive(const Vector& v, const char* what) {
  for (double x : v)
    if (!(x > 0.0)) throw NonPositiveMean(std::string(what) + ": entries must be strictly positive");
}

}  // namespace

double significance_lambda(const Vector& mu, const SymMatrix& sigma,
                           const SignificanceConfig& cfg,
                           const Tolerances& tol) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw BadAlpha("significance_lambda: alpha must lie in (0,1)");
  check_strictly_positive(mu, "significance_lambda: mu");
  check_inverse_nonnegative(sigma, tol);
  const double m2 = dot(mu, solve_spd(sigma, mu, tol));
  return std::sqrt((1.0 - cfg.alpha) / cfg.alpha) / std::sqrt(m2);
}

LargenessReport test_large(const Vector& y, const Vector& mu,
                           const SymMatrix& sigma,
                           const SignificanceConfig& cfg,
                           const Tolerances& tol) {
  if (y.size() != mu.size())
    throw DimensionMismatch("test_large: y/mu size mismatch");
  check_finite(y, "test_large: y");

  LargenessReport report;
  report.alpha = cfg.alpha;
  report.lambda = significance_lambda(mu, sigma, cfg, tol);
  const double m2 = dot(mu, solve_spd(sigma, mu, tol));
  report.lambda_printed = std::sqrt((1.0 - cfg.alpha) / cfg.alpha) / m2;

  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.size(); ++i)
    min_ratio = std::min(min_ratio, y[i] / mu[i] - 1.0);
  report.min_ratio = min_ratio;
  const bool large =
      report.lambda <= min_ratio + 1e-12 * (1.0 + std::abs(report.lambda));
  report.verdict = large ? LargenessVerdict::Large : LargenessVerdict::NotLarge;
  return report;
}

std::pair<double, double> deviation_significance(const Vector& y,
                                                 const Vector& mu,
                                                 const SymMatrix& sigma,
                                                 const Tolerances& tol) {
  if (y.size() != mu.size())
    throw DimensionMismatch("deviation_significance: y/mu size mismatch");
  const Vector d = sub(y, mu);
  double dmax = 0.0;
  for (double x : d) dmax = std::max(dmax, std::abs(x));
  for (double x : d)
    if (!(x > 1e-12 * (1.0 + dmax)))
      throw DeviationNotPositive(
          "deviation_significance: y - mu must be strictly positive");
  check_inverse_nonnegative(sigma, tol);
  const double norm2 = dot(d, solve_spd(sigma, d, tol));
  return {norm2, 1.0 / (1.0 + norm2)};
}

RankOneCovariance::RankOneCovariance(Vector d, double g, Vector u,
                                     const Tolerances& tol)
    : diag(std::move(d)), gamma(g), direction(std::move(u)) {
  if (diag.size() != direction.size())
    throw DimensionMismatch("RankOneCovariance: D/u size mismatch");
  for (double x : diag)
    if (!(x > 0.0)) throw NotPositiveDefinite("RankOneCovariance: D must be positive");
  if (!(gamma > 0.0)) throw InvalidValue("RankOneCovariance: gamma must be positive");
  for (double x : direction)
    if (x < 0.0) throw NegativeEntry("RankOneCovariance: u must be nonnegative");
  (void)cholesky(to_sym(), tol);  // D - gamma u u^T must stay positive definite
}

SymMatrix RankOneCovariance::to_sym() const {
  const int n = order();
  SymMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = -gamma * direction[i] * direction[j];
      if (i == j) v += diag[i];
      s.set(i, j, v);
    }
  return s;
}

SymMatrix sherman_morrison_minor_inverse(const RankOneCovariance& cov,
                                         const std::vector<int>& subset) {
  if (subset.empty())
    throw InvalidValue("sherman_morrison_minor_inverse: empty subset");
  for (int i : subset)
    if (i < 0 || i >= cov.order())
      throw DimensionMismatch("sherman_morrison_minor_inverse: index out of range");

  const int k = static_cast<int>(subset.size());
  Vector dinv_u(k);
  double denom = 1.0;
  for (int a = 0; a < k; ++a) {
    const int i = subset[a];
    dinv_u[a] = cov.direction[i] / cov.diag[i];
    denom -= cov.gamma * cov.direction[i] * dinv_u[a];
  }
  if (denom <= 1e-12)
    throw MinorNotPD("sherman_morrison_minor_inverse: minor not positive definite");

  // (D_J - g u_J u_J')^{-1} = D_J^{-1} + g (D_J^{-1} u)(D_J^{-1} u)' / denom
  SymMatrix inv(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b <= a; ++b) {
      double v = cov.gamma * dinv_u[a] * dinv_u[b] / denom;
      if (a == b) v += 1.0 / cov.diag[subset[a]];
      inv.set(a, b, v);
    }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b <= a; ++b)
      if (inv(a, b) < -1e-12)
        throw InverseNotNonnegative(
            "sherman_morrison_minor_inverse: negative inverse entry");
  return inv;
}

ScanResult coordinate_subset_scan(const Vector& y, const Vector& mu,
                                  const RankOneCovariance& cov, int kmax) {
  if (kmax < 1 || kmax > 4)
    throw KmaxTooLarge("coordinate_subset_scan: kmax must be in 1..4");
  if (y.size() != mu.size() || static_cast<int>(y.size()) != cov.order())
    throw DimensionMismatch("coordinate_subset_scan: size mismatch");

  const int n = cov.order();
  const Vector d = sub(y, mu);
  double dmax = 0.0;
  for (double x : d) dmax = std::max(dmax, std::abs(x));
  const double eligible_thr = 1e-12 * (1.0 + dmax);

  ScanResult result;
  std::vector<int> subset;
  auto evaluate = [&]() {
    for (int i : subset)
      if (!(d[i] > eligible_thr)) {
        result.ineligible.push_back(subset);
        return;
      }
    const SymMatrix inv = sherman_morrison_minor_inverse(cov, subset);
    Vector dj(subset.size());
    for (std::size_t a = 0; a < subset.size(); ++a) dj[a] = d[subset[a]];
    const double norm2 = quadratic_form(dj, inv);
    result.findings.push_back({subset, norm2, 1.0 / (1.0 + norm2)});
  };
  // enumerate subsets of size 1..kmax in lexicographic order
  std::vector<int> stack;
  std::function<void(int)> rec = [&](int start) {
    if (!stack.empty()) {
      subset = stack;
      evaluate();
    }
    if (static_cast<int>(stack.size()) == kmax) return;
    for (int i = start; i < n; ++i) {
      stack.push_back(i);
      rec(i + 1);
      stack.pop_back();
    }
  };
  rec(0);

  std::stable_sort(result.findings.begin(), result.findings.end(),
                   [](const SubsetFinding& a, const SubsetFinding& b) {
                     if (a.bound != b.bound) return a.bound < b.bound;
                     return a.subset < b.subset;
                   });
  return result;
}

}  // namespace ctb
