#pragma once

#include <stdexcept>
#include <string>

namespace traceinv {

// Violated mathematical precondition (degree mismatch, unbalanced diagram, ...).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured enumeration or memory budget would be exceeded.
struct limit_error : std::runtime_error {
  explicit limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (literals, structure/theory files).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct Limits {
  // Cap on group orders enumerated per canonicalization / orbit scan.
  unsigned long long enumeration = 3628800;  // 10!
  // Cap on dense tensor entry counts, d^(p+q).
  unsigned long long tensor_entries = 1ull << 24;
};

inline const Limits& default_limits() {
  static const Limits limits{};
  return limits;
}

}  // namespace traceinv
