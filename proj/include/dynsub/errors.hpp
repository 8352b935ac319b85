#pragma once

#include <stdexcept>
#include <string>

namespace dynsub {

// Base of every error raised by the library. Each subclass names the
// violated contract so callers can map failures to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DYNSUB_DEFINE_ERROR(Name) \
  class Name : public Error {     \
   public:                        \
    using Error::Error;           \
  }

DYNSUB_DEFINE_ERROR(DimensionError);
DYNSUB_DEFINE_ERROR(HermiticityError);
DYNSUB_DEFINE_ERROR(PositivityError);
DYNSUB_DEFINE_ERROR(TraceError);
DYNSUB_DEFINE_ERROR(DomainError);
DYNSUB_DEFINE_ERROR(NumericalError);
DYNSUB_DEFINE_ERROR(UnitarityError);

// classical layer
DYNSUB_DEFINE_ERROR(StochasticityError);
DYNSUB_DEFINE_ERROR(BistochasticityError);
DYNSUB_DEFINE_ERROR(NonUniqueInvariantError);

// state composition
DYNSUB_DEFINE_ERROR(ClassError);

// quasi-free layer
DYNSUB_DEFINE_ERROR(ConstraintError);
DYNSUB_DEFINE_ERROR(NormError);
DYNSUB_DEFINE_ERROR(ProjectorError);
DYNSUB_DEFINE_ERROR(ModeLimitError);
DYNSUB_DEFINE_ERROR(SingularSymbolError);
DYNSUB_DEFINE_ERROR(BlockFormError);

// samplers
DYNSUB_DEFINE_ERROR(ConvergenceError);

// malformed external input (files, command line)
DYNSUB_DEFINE_ERROR(ParseError);

#undef DYNSUB_DEFINE_ERROR

}  // namespace dynsub
