#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace secidx {

enum class ErrorKind {
  kDuplicateName,
  kDanglingEndpoint,
  kDuplicateEdge,
  kEmptyVertexClass,
  kUnknownVertex,
  kNotInSubset,
  kCapExceeded,
  kSyntax,
  kUnknownField,
  kMissingField,
  kSchemaVersion,
  kInvalidArgument,
  kSingularFrequency,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `subject()` names the offending
/// entity (vertex name, field path, file) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string subject, const std::string& message)
      : std::runtime_error(message), kind_(kind), subject_(std::move(subject)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorKind kind_;
  std::string subject_;
};

}  // namespace secidx
