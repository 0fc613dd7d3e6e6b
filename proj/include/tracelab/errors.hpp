#pragma once
#include <stdexcept>
#include <string>

namespace tracelab {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TRACELAB_ERROR(NAME)                    \
  struct NAME : Error {                         \
    using Error::Error;                         \
  }

TRACELAB_ERROR(InvalidArgument);     // malformed input, bad preconditions
TRACELAB_ERROR(ParseError);          // substitution / config parsing
TRACELAB_ERROR(NotHyperbolic);       // abelianization fails trace/det test
TRACELAB_ERROR(NormalFormNotFound);  // conjugation search exhausted
TRACELAB_ERROR(NoFixedSeed);         // no power <= 4 fixes a letter prefix
TRACELAB_ERROR(WordTooLong);         // substituted word exceeds length cap
TRACELAB_ERROR(IndexOutOfRange);     // potential index beyond prefix
TRACELAB_ERROR(PrefixTooShort);      // operator prefix shorter than request
TRACELAB_ERROR(ExponentOverflow);    // scaled arithmetic exponent overflow
TRACELAB_ERROR(LogOfZero);           // log of a zero scaled value
TRACELAB_ERROR(NotProbability);      // measure mass != 1 where required
TRACELAB_ERROR(AtAtom);              // log-potential evaluated on an atom
TRACELAB_ERROR(EmptySet);            // interval-set op needs nonempty set
TRACELAB_ERROR(FrickeMismatch);      // point fails the surface equation
TRACELAB_ERROR(InverseWordsUnavailable);  // no inverse substitution known
TRACELAB_ERROR(InvalidInverse);      // supplied inverse fails round trip
TRACELAB_ERROR(NoEscapeDetected);    // probe orbit failed to escape
TRACELAB_ERROR(NotNearInfinity);     // point not inside the chart at v+
TRACELAB_ERROR(InsufficientProbes);  // too few probe pairs for a fit
TRACELAB_ERROR(NumericalError);      // generic numerical failure

#undef TRACELAB_ERROR

}  // namespace tracelab
