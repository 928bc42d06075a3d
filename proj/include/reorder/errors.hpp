#pragma once

#include <stdexcept>
#include <string>

namespace reorder {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct InvalidMatrix : Error {
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number when known.
struct ParseError : Error {
  explicit ParseError(const std::string& msg, long line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_number(line) {}
  long line_number;
};

struct UnsupportedField : Error {
  using Error::Error;
};

struct UnsupportedFormat : Error {
  using Error::Error;
};

struct UnsupportedVersion : Error {
  UnsupportedVersion(int found, int supported)
      : Error("model file format_version " + std::to_string(found) +
              " is not supported (this build reads version " +
              std::to_string(supported) + ")"),
        found(found),
        supported(supported) {}
  int found;
  int supported;
};

struct FetchError : Error {
  using Error::Error;
};

struct CorruptArchive : Error {
  using Error::Error;
};

struct IncompleteRecord : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct EmptyDataset : Error {
  using Error::Error;
};

struct ReportError : Error {
  using Error::Error;
};

}  // namespace reorder
