#pragma once

#include <stdexcept>
#include <string>

namespace yamabe {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Graph construction / validation.
struct NonPositiveMeasure : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct DuplicateVertexId : Error { using Error::Error; };
struct UnknownVertexInEdge : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };

// Function / domain errors.
struct DomainMismatch : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct NegativeInput : Error { using Error::Error; };
struct ZeroFunction : Error { using Error::Error; };

// Exponent / problem shape errors.
struct UnsupportedExponent : Error { using Error::Error; };
struct InvalidProblem : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };

// Constraint / solver errors.
struct RetractInfeasible : Error { using Error::Error; };
struct InfeasibleProblem : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct BadLambdaSign : Error { using Error::Error; };
struct DegenerateScaling : Error { using Error::Error; };
struct NonPositiveMultiplier : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

// File ingestion.
struct ParseError : Error { using Error::Error; };

}  // namespace yamabe
