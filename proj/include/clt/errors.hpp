#pragma once

#include <stdexcept>
#include <string>

namespace clt {

/// Malformed or out-of-domain input (unknown labels, out-of-chart points,
/// parse failures).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A tolerance or radius below what the sampling resolution can resolve.
struct ToleranceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operation undefined on the argument (e.g. distance to the empty set).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The sampled construction degenerated at the working resolution.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A documented precondition of the callee was violated by the caller.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace clt
