#pragma once

#include <stdexcept>
#include <string>

namespace invfo {

// Malformed text input (file formats, formula syntax). Carries a
// human-readable position where one is known.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed input that violates a documented precondition.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An exact/exhaustive routine was asked to exceed its size guard, or a
// requested feature is deliberately not provided.
struct capability_error : std::runtime_error {
  explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A correctness condition the library maintains internally was found broken.
// Message names the violated condition. Indicates a bug, not bad input.
struct invariant_violation : std::logic_error {
  explicit invariant_violation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace invfo
