#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

enum class ErrorKind {
  Parse,        // malformed input text, task or config
  Schema,       // unknown attribute, arity/kind mismatch, bad directive
  Unmappable,   // a data value has no place in its concept tree
  EmptyTarget,  // no tuple belongs to the target class
  State,        // operation not applicable to the current relation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Process exit status for a failure of the given kind: 2 parse/schema,
// 3 unmappable data, 4 empty target class.
int exit_code(ErrorKind kind) noexcept;

}  // namespace aoi
