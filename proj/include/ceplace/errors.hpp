#pragma once

#include <stdexcept>
#include <string>

namespace ceplace {

enum class Errc {
  CyclicGraph,
  OrphanVertex,
  EmptySourceOrSink,
  ParseError,
  MissingVariant,
  NonMonotoneQuartiles,
  NonPositiveRate,
  PathExplosion,
  UnplacedVertex,
  InvalidBase,
  EmptyInput,
  UnsatisfiableShape,
  GiveUp,
  InsufficientData,
  ConfigError,
};

/// Library error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

inline const char* to_string(Errc c) {
  switch (c) {
    case Errc::CyclicGraph: return "CyclicGraph";
    case Errc::OrphanVertex: return "OrphanVertex";
    case Errc::EmptySourceOrSink: return "EmptySourceOrSink";
    case Errc::ParseError: return "ParseError";
    case Errc::MissingVariant: return "MissingVariant";
    case Errc::NonMonotoneQuartiles: return "NonMonotoneQuartiles";
    case Errc::NonPositiveRate: return "NonPositiveRate";
    case Errc::PathExplosion: return "PathExplosion";
    case Errc::UnplacedVertex: return "UnplacedVertex";
    case Errc::InvalidBase: return "InvalidBase";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::UnsatisfiableShape: return "UnsatisfiableShape";
    case Errc::GiveUp: return "GiveUp";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace ceplace
