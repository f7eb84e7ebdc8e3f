#pragma once

#include <stdexcept>
#include <string>

namespace itsec2pc {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---- probability core ----
struct DuplicateTuple : Error { using Error::Error; };
struct NonUnitMass : Error { using Error::Error; };
struct UnknownSymbol : Error { using Error::Error; };
struct UnknownVariable : Error { using Error::Error; };
struct WiringMismatch : Error { using Error::Error; };
struct OverlappingGroups : Error { using Error::Error; };
struct AlphabetMismatch : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// ---- common information ----
struct NeedTwoGroups : Error { using Error::Error; };
struct BadConfig : Error { using Error::Error; };

// Cross-checked triviality methods disagreed: an implementation bug, not a
// recoverable condition.
struct MethodDisagreement : std::logic_error {
    explicit MethodDisagreement(const std::string& what) : std::logic_error(what) {}
};

// ---- primitives ----
struct RowMassError : Error { using Error::Error; };
struct AlphabetError : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };

// ---- protocol ----
struct SpecError : Error { using Error::Error; };
struct UnknownPrimitive : Error { using Error::Error; };
struct PartialMap : Error { using Error::Error; };
struct WrongRound : Error { using Error::Error; };
struct StateLimitExceeded : Error { using Error::Error; };
struct MonotoneViolation : Error { using Error::Error; };
struct PreconditionBreach : Error { using Error::Error; };

// ---- pipeline ----
struct PatternMismatch : Error { using Error::Error; };
struct InsufficientPairs : Error { using Error::Error; };
struct BadDepth : Error { using Error::Error; };
struct UnsupportedSource : Error { using Error::Error; };
struct NotComplete : Error { using Error::Error; };

}  // namespace itsec2pc
