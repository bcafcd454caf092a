#include "tailcone/error.hpp"

namespace tailcone {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input error";
    case ErrorKind::degenerate_element: return "degenerate-element error";
    case ErrorKind::insufficient_data: return "insufficient-data error";
    case ErrorKind::degenerate_group: return "degenerate-group error";
    case ErrorKind::diverging_estimate: return "diverging-estimate error";
    case ErrorKind::zero_estimate: return "zero-estimate error";
    case ErrorKind::degenerate_variance: return "degenerate-variance error";
    case ErrorKind::overlapping_partition: return "overlapping-partition error";
    case ErrorKind::plan: return "plan error";
    case ErrorKind::law_validation: return "law-validation error";
    case ErrorKind::numeric: return "numeric error";
    case ErrorKind::io: return "I/O error";
  }
  return "unknown error";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input:
    case ErrorKind::plan:
    case ErrorKind::law_validation:
      return 2;
    case ErrorKind::insufficient_data:
      return 3;
    case ErrorKind::degenerate_element:
    case ErrorKind::degenerate_group:
    case ErrorKind::diverging_estimate:
    case ErrorKind::zero_estimate:
    case ErrorKind::degenerate_variance:
    case ErrorKind::overlapping_partition:
    case ErrorKind::numeric:
      return 4;
    case ErrorKind::io:
      return 5;
  }
  return 1;
}

}  // namespace tailcone
