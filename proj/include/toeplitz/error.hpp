#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toeplitz {

enum class Errc {
  invalid_argument,
  bounds_too_small,
  mixed_presentation,
  beta_too_close_to_one,
  tolerance_unreachable,
  not_smooth,
  precondition_failed,
  lemma_violation,
  non_atomic_measure,
  grid_mismatch,
  parse_error,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::bounds_too_small: return "bounds too small";
    case Errc::mixed_presentation: return "mixed presentation";
    case Errc::beta_too_close_to_one: return "beta too close to 1";
    case Errc::tolerance_unreachable: return "tolerance unreachable";
    case Errc::not_smooth: return "element not E-smooth";
    case Errc::precondition_failed: return "precondition failed";
    case Errc::lemma_violation: return "lemma violation";
    case Errc::non_atomic_measure: return "non-atomic measure";
    case Errc::grid_mismatch: return "a does not divide grid";
    case Errc::parse_error: return "parse error";
  }
  return "unknown error";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace toeplitz
