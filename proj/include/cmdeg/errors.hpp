#pragma once

#include <stdexcept>
#include <string>

namespace cmdeg {

// Base of every computation error raised by the library. Usage errors in the
// CLI are reported separately and never derive from this.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CMDEG_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

CMDEG_DEFINE_ERROR(NonPositiveArgument);
CMDEG_DEFINE_ERROR(PrecisionUnreachable);
CMDEG_DEFINE_ERROR(InvalidSpec);
CMDEG_DEFINE_ERROR(InvalidIndex);
CMDEG_DEFINE_ERROR(QuadratureNotConverged);
CMDEG_DEFINE_ERROR(ExtrapolationUnstable);
CMDEG_DEFINE_ERROR(InvalidArgument);

#undef CMDEG_DEFINE_ERROR

}  // namespace cmdeg
