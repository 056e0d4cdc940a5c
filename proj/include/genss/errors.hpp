#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace genss {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by a multi-term sum, or by a monomial containing kernel constants.
class NotInvertibleHere : public Error {
 public:
  using Error::Error;
};

/// Convolution involving kernels that are not supported on [0, inf).
class UnsupportedConvolution : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class SingularWronskian : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class OrderTooHigh : public Error {
 public:
  using Error::Error;
};

class StiffnessFailure : public Error {
 public:
  using Error::Error;
};

class NotReducible : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& what)
      : Error(what), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace genss
