#ifndef LCX_ERRORS_HPP
#define LCX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lcx {

// Base class for every domain error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LCX_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                  \
  public:                                                      \
    explicit Name(const std::string& msg) : Error(msg) {}      \
  }

LCX_DEFINE_ERROR(NonConcavePotential);
LCX_DEFINE_ERROR(NonIntegrable);
LCX_DEFINE_ERROR(EmptySupport);
LCX_DEFINE_ERROR(UnboundedDensity);
LCX_DEFINE_ERROR(SupportExceedsInterval);
LCX_DEFINE_ERROR(DivergentIntegral);
LCX_DEFINE_ERROR(MassMismatch);
LCX_DEFINE_ERROR(SumMismatch);
LCX_DEFINE_ERROR(PreconditionUnverified);
LCX_DEFINE_ERROR(NotMonotone);
LCX_DEFINE_ERROR(NotSymmetric);
LCX_DEFINE_ERROR(InvalidParameter);
LCX_DEFINE_ERROR(FitBudgetExceeded);
LCX_DEFINE_ERROR(BudgetExceeded);
LCX_DEFINE_ERROR(SchemaError);

#undef LCX_DEFINE_ERROR

}  // namespace lcx

#endif
