#pragma once

#include <stdexcept>
#include <string>

namespace entcert {

// Base class for every error raised by this library. Callers that do not
// care about the precise failure mode can catch this one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ENTCERT_DEFINE_ERROR(Name)                                            \
    struct Name : Error {                                                     \
        using Error::Error;                                                   \
    }

ENTCERT_DEFINE_ERROR(DimensionMismatch);
ENTCERT_DEFINE_ERROR(NotOrthonormal);
ENTCERT_DEFINE_ERROR(NotUnitary);
ENTCERT_DEFINE_ERROR(IndexOutOfRange);
ENTCERT_DEFINE_ERROR(NotOddPrime);
ENTCERT_DEFINE_ERROR(BadModulusParameter);
ENTCERT_DEFINE_ERROR(BadSchmidtVector);
ENTCERT_DEFINE_ERROR(EvenModulus);
ENTCERT_DEFINE_ERROR(NotCoprime);
ENTCERT_DEFINE_ERROR(ParityViolation);
ENTCERT_DEFINE_ERROR(ZeroProduct);
ENTCERT_DEFINE_ERROR(RangeExceeded);
ENTCERT_DEFINE_ERROR(InvalidOverlapSummary);
ENTCERT_DEFINE_ERROR(TooManyBases);
ENTCERT_DEFINE_ERROR(DimensionTooLarge);
ENTCERT_DEFINE_ERROR(NumericalInconsistency);
ENTCERT_DEFINE_ERROR(EmptyCounts);
ENTCERT_DEFINE_ERROR(ZeroDiagonal);
ENTCERT_DEFINE_ERROR(InfeasibleNoise);
ENTCERT_DEFINE_ERROR(NonBracketed);
ENTCERT_DEFINE_ERROR(Infeasible);
ENTCERT_DEFINE_ERROR(SchemaViolation);
ENTCERT_DEFINE_ERROR(NegativeCount);
ENTCERT_DEFINE_ERROR(IoFailure);

#undef ENTCERT_DEFINE_ERROR

}  // namespace entcert
