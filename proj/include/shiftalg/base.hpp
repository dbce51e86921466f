#ifndef SHIFTALG_BASE_HPP
#define SHIFTALG_BASE_HPP

#include <stdexcept>
#include <string>

namespace shiftalg {

enum class Errc {
  UnknownLetter,
  TopUnavailable,
  ClosureViolation,
  NotInDomain,
  DepthInsufficient,
  Inconsistent,
  RingMismatch,
  HypothesisViolated,
  BadDepth,
  OutsideLanguage,
  NotInvertible,
  UnsupportedBackend,
  FlavorMismatch,
  ParseError,
  ConfigError,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownLetter: return "UnknownLetter";
    case Errc::TopUnavailable: return "TopUnavailable";
    case Errc::ClosureViolation: return "ClosureViolation";
    case Errc::NotInDomain: return "NotInDomain";
    case Errc::DepthInsufficient: return "DepthInsufficient";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::BadDepth: return "BadDepth";
    case Errc::OutsideLanguage: return "OutsideLanguage";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::UnsupportedBackend: return "UnsupportedBackend";
    case Errc::FlavorMismatch: return "FlavorMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
    case Errc::Internal: return "Internal";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace shiftalg

#endif
