#pragma once

#include <stdexcept>
#include <string>

namespace psical {

enum class ErrorCode {
  InvalidGrid,       // bad axis counts / widths
  AxisRole,          // transform requested along an axis with the wrong role
  Shape,             // dimension or block mismatch
  Window,            // unusable STFT window
  Consistency,       // StftData pieces disagree
  Domain,            // argument outside the mathematical domain
  Truncation,        // series truncation budget exhausted
  OrderCap,          // derivative order above the spectral accuracy budget
  InsufficientData,  // too few samples above the fit floor
  OffGrid,           // requested point not on the lattice
  InvalidExponent,   // Lebesgue exponent outside [1, inf]
  Input,             // empty or malformed caller input
  MemoryGuard,       // refused: problem size above a hard memory cap
  Io,                // file format / read / write failure
  Config,            // bad CLI or job configuration
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace psical
