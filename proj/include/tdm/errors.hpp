#pragma once

#include <stdexcept>
#include <string>

namespace tdm {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map it onto an exit code without enumerating types.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TDM_DEFINE_ERROR(Name)            \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

// cohring
TDM_DEFINE_ERROR(SpecMismatch);
TDM_DEFINE_ERROR(NotInvertible);
TDM_DEFINE_ERROR(RingSpecError);
TDM_DEFINE_ERROR(ParseError);

// logseries
TDM_DEFINE_ERROR(ModelError);
TDM_DEFINE_ERROR(MapError);
TDM_DEFINE_ERROR(MonodromyObstruction);

// pfops
TDM_DEFINE_ERROR(OrderTooLow);
TDM_DEFINE_ERROR(NotABasis);

// mbnumeric
TDM_DEFINE_ERROR(PoleError);
TDM_DEFINE_ERROR(ContourError);
TDM_DEFINE_ERROR(ReductionMismatch);
TDM_DEFINE_ERROR(BranchPointError);

// conifold
TDM_DEFINE_ERROR(LambdaInfinite);
TDM_DEFINE_ERROR(TransitionDataError);

// fjrw
TDM_DEFINE_ERROR(ComparisonFailed);
TDM_DEFINE_ERROR(AccountingError);

#undef TDM_DEFINE_ERROR

}  // namespace tdm
