#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace nsv {

// Every failure mode gets a stable code so callers (and the CLI) can
// distinguish input errors from toolkit bugs without string matching.
enum class Errc {
    NotFinite,
    NotHermitian,
    NotUnitTrace,
    NotPositive,
    NotNormalized,
    NotUnitary,
    NotIdempotent,
    DimensionMismatch,
    RankOutOfRange,
    EmptyPartition,
    NotOrthogonal,
    DimensionSumMismatch,
    NotOrthonormal,
    ContextSpanMismatch,
    NotBlockInvariant,
    NonRealTrace,
    InvalidDistribution,
    NotTracePreserving,
    SameSector,
    DegenerateSplit,
    BobUnreachable,
    InvalidBox,
    WrongArity,
    UnknownKind,
    ParseError,
    SchemaError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message,
          double deviation = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          deviation_(deviation) {}

    Errc code() const noexcept { return code_; }

    // Measured size of the invariant violation, NaN when not applicable.
    double deviation() const noexcept { return deviation_; }

  private:
    Errc code_;
    double deviation_;
};

}  // namespace nsv
