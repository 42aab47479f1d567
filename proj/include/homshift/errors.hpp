#pragma once

#include <stdexcept>
#include <string>

namespace homshift {

enum class ErrorCode {
  InvalidArgument,
  Schema,
  CapExceeded,
  BudgetExceeded,
  InvalidSplit,
  InvalidPartition,
  InvalidCertificate,
  NotTrim,
  NotSymmetric,
  TooLarge,
  Overflow,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace homshift
