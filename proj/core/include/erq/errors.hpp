#pragma once

#include <stdexcept>
#include <string>

namespace erq {

// Base class for every error thrown by this library.  Callers that want a
// single catch-all can catch erq::Error; everything below refines it.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed arguments: out-of-range vertex ids, nonpositive counts, eps
// outside (0,1], unknown generator family, and similar caller mistakes.
struct BadParams : Error {
  using Error::Error;
};

// Input text (graph file, decomposition file, instance file, transcript)
// that does not match the documented format.
struct ParseError : Error {
  using Error::Error;
};

// A resistance query with u == v.  The oracle refuses instead of answering 0
// so that query budgets stay honest.
struct SameVertex : Error {
  using Error::Error;
};

// An operation that requires a connected graph saw one that is not.
struct Disconnected : Error {
  using Error::Error;
};

// A specific vertex pair with no connecting path where a finite resistance
// was required.
struct DisconnectedPair : Error {
  using Error::Error;
};

// An operation whose correctness argument needs unit weights was handed a
// weighted graph.
struct WeightedInput : Error {
  using Error::Error;
};

// The supplied tree decomposition fails one of the three defining
// conditions (or its over-tree is not a tree).
struct InvalidDecomposition : Error {
  using Error::Error;
};

// The known part of a completion instance contradicts the oracle answers.
struct InconsistentKnownPart : Error {
  using Error::Error;
};

// Exhaustive completion found no candidate matching the observed answers.
struct NoConsistentCompletion : Error {
  using Error::Error;
};

// Exhaustive completion found two or more matching candidates.
struct AmbiguousCompletion : Error {
  using Error::Error;
};

// A bounded-degree tester asked for a neighbor index beyond its own bound.
struct DegreeBoundExceeded : Error {
  using Error::Error;
};

// A query kind (shortest path, sorted ball, exact rational) was requested
// from an oracle that was not constructed with that capability.
struct CapabilityError : Error {
  using Error::Error;
};

}  // namespace erq
