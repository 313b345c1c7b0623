#pragma once

#include <stdexcept>
#include <string>

namespace sl2r {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SL2R_DEFINE_ERROR(Name)              \
  struct Name : Error {                      \
    using Error::Error;                      \
  }

SL2R_DEFINE_ERROR(NonInteriorPoint);
SL2R_DEFINE_ERROR(AtInfinity);
SL2R_DEFINE_ERROR(NotUnitDeterminant);
SL2R_DEFINE_ERROR(NegativeRadius);
SL2R_DEFINE_ERROR(NegativeArcLength);
SL2R_DEFINE_ERROR(ChartOverflow);
SL2R_DEFINE_ERROR(OutOfChart);
SL2R_DEFINE_ERROR(NoConvergence);
SL2R_DEFINE_ERROR(StepSizeUnderflow);
SL2R_DEFINE_ERROR(SingularStart);
SL2R_DEFINE_ERROR(RadiusOutOfRange);
SL2R_DEFINE_ERROR(QuadratureFailure);
SL2R_DEFINE_ERROR(InvalidParams);
SL2R_DEFINE_ERROR(ConventionFailure);
SL2R_DEFINE_ERROR(DegenerateNullspace);
SL2R_DEFINE_ERROR(EndpointMismatch);
SL2R_DEFINE_ERROR(NonMonotoneAngle);

#undef SL2R_DEFINE_ERROR

}  // namespace sl2r
