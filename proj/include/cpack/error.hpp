#pragma once

#include <stdexcept>
#include <string>

namespace cpack {

enum class ErrorKind {
  invalid_input,
  no_intersection,
  degenerate_triangle,
  invalid_configuration,
  unsupported_input,
  inconsistent_boundary,
  non_convergence,
  inconsistent_layout,
  degenerate_normalization,
  parse,
};

const char* to_string(ErrorKind kind);

/// True for failures of a numerical procedure (as opposed to bad input).
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the radius solver when the sweep budget runs out.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double best_residual, long iterations)
      : Error(ErrorKind::non_convergence, what),
        best_residual_(best_residual),
        iterations_(iterations) {}

  double best_residual() const noexcept { return best_residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double best_residual_;
  long iterations_;
};

}  // namespace cpack
