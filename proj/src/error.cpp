#include "nsv/error.hpp"

namespace nsv {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::NotFinite: return "NotFinite";
        case Errc::NotHermitian: return "NotHermitian";
        case Errc::NotUnitTrace: return "NotUnitTrace";
        case Errc::NotPositive: return "NotPositive";
        case Errc::NotNormalized: return "NotNormalized";
        case Errc::NotUnitary: return "NotUnitary";
        case Errc::NotIdempotent: return "NotIdempotent";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::RankOutOfRange: return "RankOutOfRange";
        case Errc::EmptyPartition: return "EmptyPartition";
        case Errc::NotOrthogonal: return "NotOrthogonal";
        case Errc::DimensionSumMismatch: return "DimensionSumMismatch";
        case Errc::NotOrthonormal: return "NotOrthonormal";
        case Errc::ContextSpanMismatch: return "ContextSpanMismatch";
        case Errc::NotBlockInvariant: return "NotBlockInvariant";
        case Errc::NonRealTrace: return "NonRealTrace";
        case Errc::InvalidDistribution: return "InvalidDistribution";
        case Errc::NotTracePreserving: return "NotTracePreserving";
        case Errc::SameSector: return "SameSector";
        case Errc::DegenerateSplit: return "DegenerateSplit";
        case Errc::BobUnreachable: return "BobUnreachable";
        case Errc::InvalidBox: return "InvalidBox";
        case Errc::WrongArity: return "WrongArity";
        case Errc::UnknownKind: return "UnknownKind";
        case Errc::ParseError: return "ParseError";
        case Errc::SchemaError: return "SchemaError";
    }
    return "UnknownError";
}

}  // namespace nsv
