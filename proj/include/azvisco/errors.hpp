#pragma once
/**
 * @file errors.hpp
 * @brief Typed error channel shared by every module of the library.
 *
 * All recoverable failures are reported by throwing azvisco::Error carrying a
 * machine-readable code plus a human-readable message.  Codes are stable API:
 * callers (and the CLI) dispatch on them.
 */

#include <stdexcept>
#include <string>

namespace azvisco {

enum class ErrorCode {
    // model construction / evaluation
    MissingOrder,            ///< a fractional order required by the model code was not supplied
    NonPositiveCoefficient,  ///< a power-sum coefficient is absent, zero, or negative
    ExponentOutOfRange,      ///< a combined exponent left its admissible window or degenerated
    ZeroArgument,            ///< transform evaluated at s = 0
    PoleHit,                 ///< transform evaluated on top of a pole of the rational part
    WrongModelShape,         ///< operation requires a model family the argument does not belong to
    // pole finder
    DegenerateGap,           ///< exponent gap too small to separate the two power terms
    DerivativeVanishes,      ///< derivative of a power sum vanishes where a residue is needed
    // Mittag-Leffler
    ParameterWindow,         ///< parameters outside the validity window of the requested representation
    Divergence,              ///< series did not converge within the term budget and no alternative applies
    // quadrature
    NotConverged,            ///< adaptive quadrature exhausted its subdivision budget
    PoleOnBoundary,          ///< principal-value pole sits on (or too close to) an integration boundary
    ContourFailure,          ///< inverse-transform contour produced a non-finite sample
    // energy
    GridTooCoarse,           ///< history grid cannot resolve the kernel's initial variation
    // I/O and CLI
    ParseError,              ///< malformed descriptor or data file
    UsageError,              ///< invalid command-line usage
};

/// Human-readable tag for an ErrorCode (stable, used in CLI diagnostics).
inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MissingOrder: return "MissingOrder";
        case ErrorCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
        case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
        case ErrorCode::ZeroArgument: return "ZeroArgument";
        case ErrorCode::PoleHit: return "PoleHit";
        case ErrorCode::WrongModelShape: return "WrongModelShape";
        case ErrorCode::DegenerateGap: return "DegenerateGap";
        case ErrorCode::DerivativeVanishes: return "DerivativeVanishes";
        case ErrorCode::ParameterWindow: return "ParameterWindow";
        case ErrorCode::Divergence: return "Divergence";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::PoleOnBoundary: return "PoleOnBoundary";
        case ErrorCode::ContourFailure: return "ContourFailure";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace azvisco
