#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tailcone {

// Error classes raised by the library. Each maps onto one CLI exit code.
enum class ErrorKind {
  input,
  degenerate_element,
  insufficient_data,
  degenerate_group,
  diverging_estimate,
  zero_estimate,
  degenerate_variance,
  overlapping_partition,
  plan,
  law_validation,
  numeric,
  io,
};

std::string_view to_string(ErrorKind kind);

// 0 success, 2 validation, 3 insufficient data, 4 degenerate statistics, 5 I/O.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace tailcone
