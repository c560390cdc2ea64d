#pragma once

#include <stdexcept>
#include <string>

namespace neariso {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  not_uniformly_convex,
  not_smooth,
  unsupported,
  check_failed,
  no_convergence,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to a structured error record.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace neariso
