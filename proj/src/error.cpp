#include "cecp/error.hpp"

namespace cecp {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::non_finite_value: return "non_finite_value";
    case Errc::invalid_config: return "invalid_config";
    case Errc::series_too_short: return "series_too_short";
    case Errc::not_normalized: return "not_normalized";
    case Errc::duplicate_label: return "duplicate_label";
    case Errc::missing_label: return "missing_label";
    case Errc::insufficient_data: return "insufficient_data";
    case Errc::embedding_failure: return "embedding_failure";
    case Errc::io_error: return "io_error";
    case Errc::parse_error: return "parse_error";
    case Errc::irregular_grid: return "irregular_grid";
  }
  return "unknown";
}

}  // namespace cecp
