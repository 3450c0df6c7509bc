#pragma once

#include <stdexcept>
#include <string>

namespace ctb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define CTB_DEFINE_ERROR(Name)       \
  struct Name : Error {              \
    using Error::Error;              \
  }

// linear algebra
CTB_DEFINE_ERROR(DimensionMismatch);
CTB_DEFINE_ERROR(NotPositiveDefinite);
CTB_DEFINE_ERROR(NoConvergence);
CTB_DEFINE_ERROR(LengthNotTriangular);
CTB_DEFINE_ERROR(SingularMap);
CTB_DEFINE_ERROR(InvalidValue);

// blocker / optimize
CTB_DEFINE_ERROR(ZeroThreshold);
CTB_DEFINE_ERROR(WitnessSearchFailed);
CTB_DEFINE_ERROR(InfeasibleRegion);
CTB_DEFINE_ERROR(IterationCapReached);
CTB_DEFINE_ERROR(DimensionGuard);
CTB_DEFINE_ERROR(NegativeEntry);
CTB_DEFINE_ERROR(EmptyRowSet);

// bounds
CTB_DEFINE_ERROR(NonPositiveInput);
CTB_DEFINE_ERROR(NonPositivePairing);
CTB_DEFINE_ERROR(NonPositiveVariance);
CTB_DEFINE_ERROR(NotAMatching);
CTB_DEFINE_ERROR(OddOrder);
CTB_DEFINE_ERROR(NotPerfect);

// stats
CTB_DEFINE_ERROR(NonPositiveMean);
CTB_DEFINE_ERROR(InverseNotNonnegative);
CTB_DEFINE_ERROR(BadAlpha);
CTB_DEFINE_ERROR(DeviationNotPositive);
CTB_DEFINE_ERROR(MinorNotPD);
CTB_DEFINE_ERROR(KmaxTooLarge);

// cli
CTB_DEFINE_ERROR(SchemaError);

#undef CTB_DEFINE_ERROR

}  // namespace ctb
