#pragma once

#include <stdexcept>
#include <string>

namespace oneone {

// Base class for all typed domain errors.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Tuple bounds violated (p < 1, q < 0, r < 0, 2q+r > p, or p-2q < 1).
struct InvalidTuple : DomainError {
    using DomainError::DomainError;
};

// The arc matching induced by the tuple does not close into a single curve.
struct DisconnectedBeta : DomainError {
    using DomainError::DomainError;
};

// Operation requires bigons but the diagram has none (q = 0).
struct SimpleDiagram : DomainError {
    using DomainError::DomainError;
};

// No twist value makes the given (p,q,r) primitive.
struct NoPrimitiveTwist : DomainError {
    using DomainError::DomainError;
};

// Attempt to move an arc on the boundary of the removed source bigon.
struct FrozenArc : DomainError {
    using DomainError::DomainError;
};

// Attempt to push an arc across a boundary circle.
struct IllegalCrossing : DomainError {
    using DomainError::DomainError;
};

// Tube push precondition fails; caller must use the sphere pipeline.
struct PushUndefined : DomainError {
    using DomainError::DomainError;
};

// Strand with p <= 1 or q <= 1 where a push or region census needs both >= 2.
struct DegenerateStrand : DomainError {
    using DomainError::DomainError;
};

struct NotCoprime : DomainError {
    using DomainError::DomainError;
};

// Anchored descent terminated with q = 1; indicates an implementation bug.
struct AnchorViolation : DomainError {
    using DomainError::DomainError;
};

// A structural fact the theory guarantees failed to hold; always a bug.
struct InternalContradiction : DomainError {
    using DomainError::DomainError;
};

}  // namespace oneone
