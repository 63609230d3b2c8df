#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace inoue {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (wrong dimensions, r = 0 lattice, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A bounded search ran out of room; raising the bound may help.
class SearchBoundExhausted : public Error {
 public:
  explicit SearchBoundExhausted(const std::string& what, long bound)
      : Error(what + " (bound " + std::to_string(bound) + ")"), bound_(bound) {}
  long bound() const noexcept { return bound_; }

 private:
  long bound_;
};

/// An identity that must hold by construction failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// One violated defining condition of a surface descriptor.
struct Issue {
  std::string field;
  std::string clause;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues)
      : Error(summarize(issues)), issues_(std::move(issues)) {}
  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  static std::string summarize(const std::vector<Issue>& issues) {
    std::string s = "validation failed:";
    for (const auto& i : issues) s += " [" + i.field + ": " + i.clause + "]";
    return s;
  }
  std::vector<Issue> issues_;
};

/// Input text is not parseable JSON.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// JSON is well formed but does not follow the surface schema.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<Issue> issues)
      : Error(summarize(issues)), issues_(std::move(issues)) {}
  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  static std::string summarize(const std::vector<Issue>& issues) {
    std::string s = "schema error:";
    for (const auto& i : issues) s += " [" + i.field + ": " + i.clause + "]";
    return s;
  }
  std::vector<Issue> issues_;
};

}  // namespace inoue
