#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace policystory {

// Root of every error thrown by the library. Callers that only need to report
// a failure can catch this; callers that branch on the failure kind catch the
// subclasses below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record or argument broke one of its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Network failure, or an HTTP status that survived all retries. status is 0
// when no HTTP response was received at all.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int status = 0) : Error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

// A peer answered, but not in the expected shape.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Non-retryable 4xx from a backend.
class PermanentError : public Error {
 public:
  PermanentError(const std::string& what, int status) : Error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

// Request would not fit the context window; never sent.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class ItemTooLargeError : public Error {
 public:
  ItemTooLargeError(const std::string& what, std::size_t index) : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Page fetched fine but yielded no usable article text.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace policystory

namespace policystory {

// Rethrows the in-flight exception as the same library error type with
// "context: " prepended to its message. Call only from inside a catch block.
[[noreturn]] void rethrow_with_context(const std::string& context);

}  // namespace policystory
