#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projlat {

enum class ErrorCode : int {
  Ok = 0,
  NotSelfAdjoint = 10,
  NotAProjection,
  AlgebraMismatch,
  NotInPositionP,
  NormTooLarge,
  NonzeroMeet,
  SpectrumOutOfRange,
  NotAdditive,
  WrongAlgebra,
  NotUnitary,
  TypeI2Present,
  NotOrthoiso,
  ReconstructionFailed,
  Parse = 40,
  Io,
  Usage,
  Internal = 99,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace projlat
