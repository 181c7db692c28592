#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppdiv {

/// Failure categories raised by the library. The CLI prints `to_string(kind)`
/// on the diagnostic stream, so the spellings are part of the interface.
enum class ErrorKind {
  ZeroVector,
  NotInjective,
  TorsionCokernel,
  RankMismatch,
  TailMismatch,
  NotPointed,
  EmptyPolyhedron,
  UnknownLabel,
  NonIntegral,
  EmptyFiber,
  OutsideWeightCone,
  TailViolation,
  UnknownFunction,
  ChainMismatch,
  MissingLabel,
  EmptyInterval,
  NotInvariant,
  MixedRamification,
  InvalidParameters,
  NoBezoutWithDivisibility,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::TorsionCokernel: return "TorsionCokernel";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::TailMismatch: return "TailMismatch";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::EmptyPolyhedron: return "EmptyPolyhedron";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::EmptyFiber: return "EmptyFiber";
    case ErrorKind::OutsideWeightCone: return "OutsideWeightCone";
    case ErrorKind::TailViolation: return "TailViolation";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::ChainMismatch: return "ChainMismatch";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::EmptyInterval: return "EmptyInterval";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::MixedRamification: return "MixedRamification";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::NoBezoutWithDivisibility: return "NoBezoutWithDivisibility";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

/// Malformed textual input (session files, CLI literals).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw DomainError(kind, what);
}

}  // namespace ppdiv
