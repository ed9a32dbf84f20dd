#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace randers {

enum class ErrorKind {
  invalid_parameter,
  metric_degenerate,
  vertex_singular,
  numerical_blowup,
  invalid_bracket,
  inconsistent_input,
  search_horizon,
  horizon,
  not_embeddable,
  domain,
  verification_failed,
  parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine carries a kind so front ends can map it
/// to an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace randers
