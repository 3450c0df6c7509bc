#include "ctb/montecarlo.hpp"

#include <cmath>

#include "ctb/rng.hpp"

namespace ctb {

Samples sample_gaussian(const SymMatrix& sigma, long n_samples,
                        std::uint64_t seed, const Tolerances& tol) {
  if (n_samples < 1) throw InvalidValue("sample_gaussian: n_samples must be >= 1");
  const CholeskyFactor chol = cholesky(sigma, tol);
  const int n = sigma.order();

  Samples out;
  out.dim = n;
  out.n_samples = n_samples;
  out.data.resize(std::size_t(n_samples) * n);

  const CounterRng rng(seed);
  Vector z(n);
  for (long i = 0; i < n_samples; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::uint64_t c = 2 * (std::uint64_t(i) * n + j);
      const double u1 = rng.uniform_at(c);
      const double u2 = rng.uniform_at(c + 1);
      z[j] = std::sqrt(-2.0 * std::log(u1)) *
             std::cos(6.283185307179586476925286766559 * u2);
    }
    for (int r = 0; r < n; ++r) {
      double s = 0.0;
      for (int c = 0; c <= r; ++c) s += chol.lower[r][c] * z[c];
      out.data[std::size_t(i) * n + r] = s;
    }
  }
  return out;
}

TailEstimate estimate_tail(const Samples& samples, const Vector& b,
                           const ConeDescriptor& cone, const Tolerances& tol) {
  (void)tol;
  if (samples.dim != static_cast<int>(b.size()) ||
      samples.dim != ambient_dim(cone))
    throw DimensionMismatch("estimate_tail: dimension mismatch");
  long hits = 0;
  for (long i = 0; i < samples.n_samples; ++i) {
    if (contains(cone, sub(samples.row(i), b), 1e-12).inside) ++hits;
  }
  TailEstimate est;
  est.n_samples = samples.n_samples;
  est.p_hat = double(hits) / double(samples.n_samples);
  est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(samples.n_samples));
  return est;
}

CheckVerdict check_bound(const TailEstimate& est, double bound) {
  return est.p_hat <= bound + 3.0 * est.stderr_ ? CheckVerdict::Pass
                                                : CheckVerdict::Fail;
}

TwoPointWitness sharpness_witness_1d(double s2) {
  if (!(s2 > 0.0))
    throw NonPositiveVariance("sharpness_witness_1d: s2 must be positive");
  TwoPointWitness w;
  w.s2 = s2;
  w.hi_value = 1.0;
  w.hi_prob = s2 / (1.0 + s2);
  w.lo_value = -s2;
  w.lo_prob = 1.0 / (1.0 + s2);
  return w;
}

}  // namespace ctb
