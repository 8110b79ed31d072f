#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace srret {

enum class ErrorCode {
  CoincidentPoints,
  NonUnitDipole,
  DegenerateEnsemble,
  EmptyGrid,
  BadAngles,
  AcceptorInsideSphere,
  BadShell,
  AcceptorInsideSupport,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Library-wide error. `index()` names the offending donor or grid point when
/// one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace srret
