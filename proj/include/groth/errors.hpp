#pragma once

#include <stdexcept>
#include <string>

namespace groth {

enum class ErrorCode {
  dimension,
  not_hermitian,
  not_psd,
  non_finite,
  zero_matrix,
  domain,
  non_convergence,
  parse,
  io,
};

const char* to_string(ErrorCode code);

/// Base of every error raised by the library. The code is what the CLI
/// writes into its report; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace groth
