#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lfsrng {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration, spec text or argument (CLI exit code 2).
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Input too short for the requested test or battery.
class LengthError : public SpecError {
 public:
  LengthError(const std::string& what, std::size_t required, std::size_t actual)
      : SpecError(what), required_(required), actual_(actual) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t required_;
  std::size_t actual_;
};

/// File system or format failure (CLI exit code 3).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lfsrng
