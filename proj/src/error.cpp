#include "jamgame/error.hpp"

namespace jamgame {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroChannel: return "ZeroChannel";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNoJammableEavesdropper: return "NoJammableEavesdropper";
    case ErrorCode::kNonConcaveObjective: return "NonConcaveObjective";
    case ErrorCode::kNonPositiveGamma: return "NonPositiveGamma";
    case ErrorCode::kNonPositivePrice: return "NonPositivePrice";
    case ErrorCode::kTooManyEavesdroppers: return "TooManyEavesdroppers";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace jamgame
