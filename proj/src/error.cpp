#include "neariso/error.hpp"

namespace neariso {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::not_uniformly_convex: return "not-uniformly-convex";
    case Errc::not_smooth: return "not-smooth";
    case Errc::unsupported: return "unsupported";
    case Errc::check_failed: return "check-failed";
    case Errc::no_convergence: return "no-convergence";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace neariso
