#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace contracta {

// Machine-readable failure categories. The CLI maps these to exit codes
// and prints them as error[<code>] tags.
enum class ErrorCode {
  argument,
  domain,
  closure,
  evaluation,
  parse,
  audit,
  config_syntax,
  config_unknown_key,
  config_type,
  config_constraint,
  io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Bad call arguments: empty sample sets, zero counts, exceeded budgets.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message)
      : Error(ErrorCode::argument, message) {}
};

// A point fell outside the space's domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorCode::domain, message) {}
};

// A self-map iterate escaped its domain; carries the offending index.
class ClosureError : public Error {
 public:
  ClosureError(const std::string& message, std::size_t index)
      : Error(ErrorCode::closure, message), index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Expression evaluation failed; message names the subexpression.
class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& message)
      : Error(ErrorCode::evaluation, message) {}
};

// Expression text did not parse; carries the character position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(ErrorCode::parse, message), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A checker precondition audit could not even run (for example an alpha
// value outside [0, 1)).
class AuditError : public Error {
 public:
  explicit AuditError(const std::string& message)
      : Error(ErrorCode::audit, message) {}
};

// Config document problems; carries key path and line number.
class ConfigError : public Error {
 public:
  ConfigError(ErrorCode code, const std::string& message,
              const std::string& key, std::size_t line)
      : Error(code, message), key_(key), line_(line) {}

  const std::string& key() const { return key_; }
  std::size_t line() const { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorCode::io, message) {}
};

}  // namespace contracta
