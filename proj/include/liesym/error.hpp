#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liesym {

enum class ErrorCode {
  Parse = 1,
  Domain,
  UnboundSymbol,
  NotPolynomial,
  CyclicBinding,
  NotCertifiable,
  NotClosed,
  NotIdeal,
  NoComplement,
  SelfCheck,
  InvalidArgument,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace liesym
