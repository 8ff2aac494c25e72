#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcg {

enum class Errc {
  invalid_argument,
  parse,
  out_of_range,
  verification,
  io,
  state,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Malformed textual input; offset is the byte position where decoding failed.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(Errc::parse, what + " (byte offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace pcg
