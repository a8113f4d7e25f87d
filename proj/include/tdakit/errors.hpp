#pragma once

#include <stdexcept>
#include <string>

namespace tdakit {

// Categories double as CLI exit codes (see tools/tdakit.cpp).
enum class ErrorKind {
  Io = 3,
  Parse = 4,
  Capacity = 5,
  Incomparable = 6,
  Data = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

// Malformed input text. Row and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row = 0,
             std::string column = {})
      : Error(ErrorKind::Parse, format(what, row, column)),
        row_(row),
        column_(std::move(column)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t row,
                            const std::string& column) {
    std::string out;
    if (row != 0) out += "row " + std::to_string(row) + ": ";
    if (!column.empty()) out += "column '" + column + "': ";
    return out + what;
  }

  std::size_t row_;
  std::string column_;
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what)
      : Error(ErrorKind::Capacity, what) {}
};

class IncomparableError : public Error {
 public:
  explicit IncomparableError(const std::string& what)
      : Error(ErrorKind::Incomparable, what) {}
};

// Valid input that the requested operation cannot handle (too few points,
// unclassifiable records, ...).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

// Rethrows `e` as the same error category with `context` prepended.
[[noreturn]] inline void rethrow_with_context(const Error& e,
                                             const std::string& context) {
  const std::string what = context + e.what();
  switch (e.kind()) {
    case ErrorKind::Io: throw IoError(what);
    case ErrorKind::Parse: throw ParseError(what);
    case ErrorKind::Capacity: throw CapacityError(what);
    case ErrorKind::Incomparable: throw IncomparableError(what);
    case ErrorKind::Data: throw DataError(what);
  }
  throw Error(e.kind(), what);
}

}  // namespace tdakit
