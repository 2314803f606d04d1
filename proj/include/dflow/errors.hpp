#pragma once

#include <stdexcept>
#include <string>

namespace dflow {

// Every precondition failure in the library surfaces as Error with a kind tag,
// so callers (the CLI in particular) can map failures to exit codes without
// string-matching messages.
enum class ErrorKind {
  // input / format layer
  ParseError,
  // complex layer
  DuplicateCellId,
  UnknownCellInCovering,
  BadCoveringDimension,
  EmptyFacet,
  NotComparable,
  // discrete Morse layer
  MissingValue,
  NotMorse,
  OverlappingPairs,
  CyclicVPath,
  // flow category layer
  NonCriticalEndpoint,
  EndpointMismatch,
  RankMismatch,
  NotComposable,
  // homological algebra layer
  NotFiniteDirected,
  // spectral layer
  NotCollapsed,
  // category verification layer
  NotUFC,
  NotFreePair,
};

const char* error_kind_name(ErrorKind k);

struct Error : std::runtime_error {
  ErrorKind kind;

  Error(ErrorKind k, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(k)) + ": " + message), kind(k) {}
};

}  // namespace dflow
