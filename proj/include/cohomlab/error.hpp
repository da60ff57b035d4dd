#pragma once

#include <stdexcept>
#include <string>

namespace cohomlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COHOMLAB_ERROR(Name)                 \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  }

COHOMLAB_ERROR(InvalidContext);
COHOMLAB_ERROR(NotAUnit);
COHOMLAB_ERROR(DimensionMismatch);
COHOMLAB_ERROR(NotASubmodule);
COHOMLAB_ERROR(NonInvertibleGenerator);
COHOMLAB_ERROR(NonInvertibleConjugator);
COHOMLAB_ERROR(CapExceeded);
COHOMLAB_ERROR(BudgetExceeded);
COHOMLAB_ERROR(NotASubgroup);
COHOMLAB_ERROR(StabilizerMismatch);
COHOMLAB_ERROR(HypothesisViolated);
COHOMLAB_ERROR(WrongLevel);
COHOMLAB_ERROR(InvalidInput);

#undef COHOMLAB_ERROR

}  // namespace cohomlab
