#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poslog {

// Malformed input: unknown labels, unparsable grammars, violated preconditions.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured size guard.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A cross-check between two independent computations disagreed; always a bug.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Global cap on the cardinality of any materialized object enumeration.
// Defaults to 100000; the CLI overrides it from the POSLOG_GUARD environment
// variable.
std::size_t size_guard();
void set_size_guard(std::size_t n);

}  // namespace poslog
