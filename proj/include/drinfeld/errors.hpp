#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

// Failure codes carried by every library exception.  Most map one-to-one
// onto a precondition of some public operation; a few (SizeLimit,
// CapExceeded) signal resource policy rather than mathematical error.
enum class Err {
  DivisionByZero,
  ConfigMismatch,
  ContextMismatch,
  ValuationOfZero,
  EvenCharacteristic,
  OddCharacteristic,
  BadReduction,
  CharacteristicDividesModulus,
  RankMismatch,
  ZeroTwist,
  NormDegenerate,
  CapExceeded,
  InseparableModulus,
  NoSolution,
  AmbiguousSolution,
  CharacteristicClash,
  SizeLimit,
  ImageTooSmall,
  UnsupportedField,
  RamifiedPrime,
  InsufficientSplitPrimes,
  SyntaxError,
  FieldMismatch,
  Precondition,
  Internal,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::ConfigMismatch: return "ConfigMismatch";
    case Err::ContextMismatch: return "ContextMismatch";
    case Err::ValuationOfZero: return "ValuationOfZero";
    case Err::EvenCharacteristic: return "EvenCharacteristic";
    case Err::OddCharacteristic: return "OddCharacteristic";
    case Err::BadReduction: return "BadReduction";
    case Err::CharacteristicDividesModulus: return "CharacteristicDividesModulus";
    case Err::RankMismatch: return "RankMismatch";
    case Err::ZeroTwist: return "ZeroTwist";
    case Err::NormDegenerate: return "NormDegenerate";
    case Err::CapExceeded: return "CapExceeded";
    case Err::InseparableModulus: return "InseparableModulus";
    case Err::NoSolution: return "NoSolution";
    case Err::AmbiguousSolution: return "AmbiguousSolution";
    case Err::CharacteristicClash: return "CharacteristicClash";
    case Err::SizeLimit: return "SizeLimit";
    case Err::ImageTooSmall: return "ImageTooSmall";
    case Err::UnsupportedField: return "UnsupportedField";
    case Err::RamifiedPrime: return "RamifiedPrime";
    case Err::InsufficientSplitPrimes: return "InsufficientSplitPrimes";
    case Err::SyntaxError: return "SyntaxError";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::Precondition: return "Precondition";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what),
        code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& what) {
  throw Error(code, what);
}

inline void check(bool ok, Err code, const std::string& what) {
  if (!ok) raise(code, what);
}

}  // namespace drinfeld
