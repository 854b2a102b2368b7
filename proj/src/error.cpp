#include "secidx/error.hpp"

namespace secidx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDuplicateName: return "duplicate-name";
    case ErrorKind::kDanglingEndpoint: return "dangling-endpoint";
    case ErrorKind::kDuplicateEdge: return "duplicate-edge";
    case ErrorKind::kEmptyVertexClass: return "empty-vertex-class";
    case ErrorKind::kUnknownVertex: return "unknown-vertex";
    case ErrorKind::kNotInSubset: return "not-in-subset";
    case ErrorKind::kCapExceeded: return "cap-exceeded";
    case ErrorKind::kSyntax: return "syntax";
    case ErrorKind::kUnknownField: return "unknown-field";
    case ErrorKind::kMissingField: return "missing-field";
    case ErrorKind::kSchemaVersion: return "schema-version";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kSingularFrequency: return "singular-frequency";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace secidx
