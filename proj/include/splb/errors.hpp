#pragma once

#include <stdexcept>
#include <string>

namespace splb {

/// Exception carrying a stable machine-readable reason code alongside the
/// human-readable message.  Reason codes are used verbatim as skip reasons in
/// experiment reports, so they must stay short and stable:
///
///   invalid-domain, invalid-smoothness, invalid-order, out-of-domain,
///   unsupported-rule, nonconforming-order, not-positive-definite,
///   singular-system, resolution, empty-space, invalid-data,
///   missing-derivative, degenerate-map, norm-flavor, nonconforming-partition,
///   invalid-multipatch, unknown-id, invalid-config
class Error : public std::runtime_error {
public:
  Error(std::string reason, const std::string& what)
      : std::runtime_error(reason + ": " + what), reason_(std::move(reason)) {}

  const std::string& reason() const noexcept { return reason_; }

private:
  std::string reason_;
};

} // namespace splb
