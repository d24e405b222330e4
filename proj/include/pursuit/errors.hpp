#pragma once

#include <stdexcept>
#include <string>

namespace pursuit {

// Failure categories surfaced by the library. Every throwing operation
// documents which of these it can raise.
enum class errc {
  malformed_line,
  self_loop,
  duplicate_edge,
  disconnected,
  empty_graph,
  invalid_parameter,
  all_zero_weights,
  negative_weight,
  budget_exceeded,
  non_iid_sweeps,
  degenerate_evasion,
  non_termination,
  domain_error,
  invalid_case,
};

class game_error : public std::runtime_error {
public:
  game_error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw game_error(code, what);
}

}  // namespace pursuit
