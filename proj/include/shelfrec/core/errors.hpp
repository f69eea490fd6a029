#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shelfrec {

enum class ErrorCode {
  invalid_argument,  // malformed input or violated precondition
  not_found,         // unknown session, item, shelf or panel
  conflict,          // state-machine guard (phase violation, double settle)
  parse_error,       // malformed file content
  storage,           // I/O failure
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace shelfrec
