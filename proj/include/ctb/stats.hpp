#pragma once

#include <utility>
#include <vector>

#include "ctb/linalg.hpp"

namespace ctb {

struct SignificanceConfig {
  double alpha = 0.05;
};

// The unique lambda > 0 with 1 / (1 + lambda^2 <mu, Sigma^{-1} mu>) = alpha.
// Requires mu strictly positive and Sigma^{-1} entrywise nonnegative.
double significance_lambda(const Vector& mu, const SymMatrix& sigma,
                           const SignificanceConfig& cfg,
                           const Tolerances& tol = {});

enum class LargenessVerdict { Large, NotLarge };

struct LargenessReport {
  LargenessVerdict verdict = LargenessVerdict::NotLarge;
  double lambda = 0.0;          // from the bound inversion
  double lambda_printed = 0.0;  // alternative published form, for comparison
  double min_ratio = 0.0;       // min_i (y_i / mu_i - 1)
  double alpha = 0.0;           // guaranteed false-positive level
};

// Declares y large at level alpha when y >= (1 + lambda) mu componentwise
// (boundary inclusive).
LargenessReport test_large(const Vector& y, const Vector& mu,
                           const SymMatrix& sigma,
                           const SignificanceConfig& cfg,
                           const Tolerances& tol = {});

// norm2 = <y - mu, Sigma^{-1} (y - mu)>, bound = 1 / (1 + norm2).
// Requires y - mu strictly positive and Sigma^{-1} entrywise nonnegative.
std::pair<double, double> deviation_significance(const Vector& y,
                                                 const Vector& mu,
                                                 const SymMatrix& sigma,
                                                 const Tolerances& tol = {});

// Covariance D - gamma u u^T: every principal minor has entrywise
// nonnegative inverse, computable in closed form via Sherman-Morrison.
struct RankOneCovariance {
  Vector diag;      // positive entries of D
  double gamma;     // > 0
  Vector direction; // nonnegative u

  RankOneCovariance(Vector d, double g, Vector u, const Tolerances& tol = {});
  SymMatrix to_sym() const;
  int order() const { return static_cast<int>(diag.size()); }
};

SymMatrix sherman_morrison_minor_inverse(const RankOneCovariance& cov,
                                         const std::vector<int>& subset);

struct SubsetFinding {
  std::vector<int> subset;      // sorted indices
  double deviation_norm2 = 0.0;
  double bound = 1.0;           // 1 / (1 + deviation_norm2)
};

struct ScanResult {
  std::vector<SubsetFinding> findings;          // ascending bound
  std::vector<std::vector<int>> ineligible;     // subsets with nonpositive deviation
};

// Evaluates every subset of size 1..kmax (kmax <= 4); subsets whose deviation
// is not strictly positive are skipped and recorded.
ScanResult coordinate_subset_scan(const Vector& y, const Vector& mu,
                                  const RankOneCovariance& cov, int kmax);

}  // namespace ctb
