#pragma once

#include <stdexcept>
#include <string>

namespace gerbes {

// Exit-code contract shared with the CLI: 1 validation, 2 size bound, 3 parse.
enum class ErrorCode { validation = 1, size_bound = 2, parse = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(ErrorCode::validation, what) {}
};
struct SizeBoundError : Error {
  explicit SizeBoundError(const std::string& what) : Error(ErrorCode::size_bound, what) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorCode::parse, what) {}
};

}  // namespace gerbes
