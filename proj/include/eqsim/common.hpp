#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqsim {

// Half-open byte interval [begin, end) into a document's raw text.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool operator==(const ByteRange&) const = default;
};

enum class ErrorKind {
  UnbalancedDelimiter,
  InvalidEncoding,
  EmptyFormula,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ErrorKind kind, std::size_t offset, const std::string& what)
      : std::runtime_error(what), kind_(kind), offset_(offset) {}

  ErrorKind kind() const { return kind_; }
  // Byte offset of the offending input position.
  std::size_t offset() const { return offset_; }

 private:
  ErrorKind kind_;
  std::size_t offset_;
};

}  // namespace eqsim
