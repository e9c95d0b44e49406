#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cecp {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  non_finite_value,
  invalid_config,
  series_too_short,
  not_normalized,
  duplicate_label,
  missing_label,
  insufficient_data,
  embedding_failure,
  io_error,
  parse_error,
  irregular_grid,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this exception; code() gives a
// stable machine-readable category used by the CLI's structured errors.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cecp
