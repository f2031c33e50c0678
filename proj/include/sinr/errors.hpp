#pragma once

#include <stdexcept>
#include <string>

namespace sinr {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument values, malformed geometry, precondition failures.
struct validation_error : error {
  using error::error;
};

// Input outside the mathematical domain of an operation (e.g. zeta(x), x <= 1).
struct domain_error : error {
  using error::error;
};

// Path-loss exponent not strictly greater than the metric dimension.
struct fading_violation_error : error {
  using error::error;
};

// Two points coincide where a positive distance is required.
struct colocation_error : error {
  using error::error;
};

// Brute-force machinery asked to enumerate beyond its budget.
struct oracle_scale_error : error {
  using error::error;
};

// Instance or schedule file rejected; message carries line/field context.
struct parse_error : error {
  using error::error;
};

// A computed quantity degenerated (e.g. division by z2 = 0 in a ratio bound).
struct degenerate_bound_error : error {
  using error::error;
};

// A condition that the library itself guarantees failed to hold.
struct internal_error : error {
  using error::error;
};

}  // namespace sinr
