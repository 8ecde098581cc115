#pragma once

#include <stdexcept>
#include <string>

namespace qitecut {

/// Malformed input (graph6 records, config files, CLI graph specs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request outside a documented size cap (enumeration, brute force, dense oracle).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant was violated, e.g. a non-identity S matrix.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qitecut
