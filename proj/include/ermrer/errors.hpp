#pragma once

#include <stdexcept>
#include <string>

namespace ermrer {

// Every error carries a stable name used by the CLI when reporting on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define ERMRER_DEFINE_ERROR(NAME)                         \
  class NAME : public Error {                             \
   public:                                                \
    explicit NAME(const std::string& what = "")           \
        : Error(#NAME, what) {}                           \
  }

ERMRER_DEFINE_ERROR(AllZeroWeights);
ERMRER_DEFINE_ERROR(NegativeWeight);
ERMRER_DEFINE_ERROR(LengthMismatch);
ERMRER_DEFINE_ERROR(NonPositiveLambda);
ERMRER_DEFINE_ERROR(BetaOutOfDomain);
ERMRER_DEFINE_ERROR(NoConvergence);
ERMRER_DEFINE_ERROR(NotNormalized);
ERMRER_DEFINE_ERROR(ZeroDerivativeEntry);
ERMRER_DEFINE_ERROR(InvalidDelta);
ERMRER_DEFINE_ERROR(EmptyDataset);
ERMRER_DEFINE_ERROR(DegenerateCovariance);
ERMRER_DEFINE_ERROR(BadMagic);
ERMRER_DEFINE_ERROR(TruncatedFile);
ERMRER_DEFINE_ERROR(DimensionMismatch);
ERMRER_DEFINE_ERROR(InvalidRisk);
ERMRER_DEFINE_ERROR(InvalidConfig);

#undef ERMRER_DEFINE_ERROR

}  // namespace ermrer
