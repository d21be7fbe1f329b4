#include "wdnlip/errors.hpp"

namespace wdnlip {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedSection: return "MalformedSection";
    case ErrorKind::UnknownNodeRef: return "UnknownNodeRef";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::MissingRequiredSection: return "MissingRequiredSection";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::NonPositiveFlow: return "NonPositiveFlow";
    case ErrorKind::MissingLink: return "MissingLink";
    case ErrorKind::DuplicateLink: return "DuplicateLink";
    case ErrorKind::UnknownLink: return "UnknownLink";
    case ErrorKind::InvertedInterval: return "InvertedInterval";
    case ErrorKind::PumpNonpositiveLower: return "PumpNonpositiveLower";
    case ErrorKind::MalformedBounds: return "MalformedBounds";
    case ErrorKind::NoPumps: return "NoPumps";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)) {}

}  // namespace wdnlip
