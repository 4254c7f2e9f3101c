#include "dcmpf/error.hpp"

namespace dcmpf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSize: return "invalid_size";
    case ErrorCode::Resource: return "resource";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::Invalid: return "invalid";
    case ErrorCode::Configuration: return "configuration";
    case ErrorCode::UnsupportedLocality: return "unsupported_locality";
    case ErrorCode::SingularSystem: return "singular_system";
    case ErrorCode::Mode: return "mode";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::IllConditioned: return "ill_conditioned";
    case ErrorCode::Input: return "input";
    case ErrorCode::Site: return "site";
    case ErrorCode::Format: return "format";
    case ErrorCode::InsufficientData: return "insufficient_data";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Saturation: return "saturation";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace dcmpf
