#ifndef KLPAR_ERRORS_HPP
#define KLPAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace klp {

// Error categories; the numeric values double as process exit codes.
enum class ErrorCode : int { Validation = 2, Limit = 3, Io = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what)
      : Error(ErrorCode::Validation, what) {}
};

struct LimitError : Error {
  explicit LimitError(const std::string& what) : Error(ErrorCode::Limit, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace klp

#endif
