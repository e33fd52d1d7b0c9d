#ifndef DOCTRINA_ERROR_HPP
#define DOCTRINA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace doctrina {

// Input that cannot be interpreted at all: out-of-range ids, non-total
// tables, unknown names. The CLI maps this to exit code 2.
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its precondition (missing product,
// non-functional relation handed to tabulation, ...).
class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A declared witness (power object, existential table, ...) does not have
// the universal property it claims.
class WitnessFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse / type errors of the internal language carry a source offset.
class LanguageError : public std::runtime_error {
 public:
  LanguageError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace doctrina

#endif
