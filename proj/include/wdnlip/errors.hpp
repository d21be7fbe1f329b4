#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wdnlip {

enum class ErrorKind {
  // input file
  MalformedSection,
  UnknownNodeRef,
  DuplicateId,
  MissingRequiredSection,
  ParameterOutOfRange,
  // model evaluation
  NonPositiveFlow,
  // flow bounds
  MissingLink,
  DuplicateLink,
  UnknownLink,
  InvertedInterval,
  PumpNonpositiveLower,
  MalformedBounds,
  NoPumps,
  // sampling
  DimensionTooLarge,
  // everything else
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace wdnlip
