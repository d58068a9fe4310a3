#pragma once

#include <stdexcept>
#include <string>

namespace nmsa {

/// Structured failure codes. The CLI maps these onto process exit codes,
/// everything else just propagates them.
enum class Errc {
    // alignment validation
    UnequalRowLengths,
    AllGapColumn,
    RowMismatchesSequence,
    // index / bit-vector machinery
    EmptyIndexSet,
    IndexOutOfRange,
    BitExceedsIndex,
    BitSumMismatch,
    ZeroColumn,
    // scoring
    WrongRowCount,
    ArityMismatch,
    NonPositiveScale,
    AlphabetMismatch,
    // search guards
    ResourceCapExceeded,
    BudgetExceeded,
    LengthVectorOutOfRange,
    // star machinery
    IncoherentStar,
    // ingestion / front end
    ParseError,
    ValidationError,
    UnsupportedCombination,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::UnequalRowLengths: return "UnequalRowLengths";
        case Errc::AllGapColumn: return "AllGapColumn";
        case Errc::RowMismatchesSequence: return "RowMismatchesSequence";
        case Errc::EmptyIndexSet: return "EmptyIndexSet";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::BitExceedsIndex: return "BitExceedsIndex";
        case Errc::BitSumMismatch: return "BitSumMismatch";
        case Errc::ZeroColumn: return "ZeroColumn";
        case Errc::WrongRowCount: return "WrongRowCount";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::NonPositiveScale: return "NonPositiveScale";
        case Errc::AlphabetMismatch: return "AlphabetMismatch";
        case Errc::ResourceCapExceeded: return "ResourceCapExceeded";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::LengthVectorOutOfRange: return "LengthVectorOutOfRange";
        case Errc::IncoherentStar: return "IncoherentStar";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
        case Errc::UnsupportedCombination: return "UnsupportedCombination";
    }
    return "Unknown";
}

} // namespace nmsa
