#pragma once

#include <cstdint>

#include "ctb/cones.hpp"

namespace ctb {

// Row-major sample matrix: n_samples rows of dimension dim.
struct Samples {
  int dim = 0;
  long n_samples = 0;
  std::vector<double> data;

  Vector row(long i) const {
    return Vector(data.begin() + i * dim, data.begin() + (i + 1) * dim);
  }
};

// Centered Gaussian with covariance Sigma: Box-Muller normals from a
// counter-based generator, multiplied by the Cholesky factor. Bit-for-bit
// reproducible from (seed, n_samples) on one platform.
Samples sample_gaussian(const SymMatrix& sigma, long n_samples,
                        std::uint64_t seed, const Tolerances& tol = {});

struct TailEstimate {
  double p_hat = 0.0;
  double stderr_ = 0.0;  // sqrt(p(1-p)/n)
  long n_samples = 0;
  std::uint64_t seed = 0;
};

// Empirical frequency of the event x - b in C (strict membership oracle,
// tolerance 1e-12).
TailEstimate estimate_tail(const Samples& samples, const Vector& b,
                           const ConeDescriptor& cone,
                           const Tolerances& tol = {});

enum class CheckVerdict { Pass, Fail };

// Pass iff p_hat <= bound + 3 stderr.
CheckVerdict check_bound(const TailEstimate& est, double bound);

// Scalar two-point law attaining the Cantelli bound at threshold 1:
// value 1 with probability s2/(1+s2), value -s2 with probability 1/(1+s2).
struct TwoPointWitness {
  double s2 = 0.0;
  double hi_value = 1.0;
  double hi_prob = 0.0;
  double lo_value = 0.0;
  double lo_prob = 0.0;

  double mean() const { return hi_value * hi_prob + lo_value * lo_prob; }
  double variance() const {
    const double m = mean();
    return (hi_value - m) * (hi_value - m) * hi_prob +
           (lo_value - m) * (lo_value - m) * lo_prob;
  }
  double tail_at_one() const { return hi_prob; }
};

TwoPointWitness sharpness_witness_1d(double s2);

}  // namespace ctb
