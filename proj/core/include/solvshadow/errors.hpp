#ifndef SOLVSHADOW_ERRORS_HPP
#define SOLVSHADOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace solvshadow {

/// Error taxonomy, mapped to CLI exit codes:
///   Input    -> 2 (malformed or invalid input documents)
///   Math     -> 1 (a mathematical precondition or check failed)
///   Internal -> 3 (a postcondition of our own code failed; always a bug)
enum class ErrorClass { Input, Math, Internal };

class Error : public std::runtime_error {
public:
  Error(ErrorClass cls, std::string code, const std::string& what)
      : std::runtime_error(what), cls_(cls), code_(std::move(code)) {}

  ErrorClass error_class() const { return cls_; }
  const std::string& code() const { return code_; }

private:
  ErrorClass cls_;
  std::string code_;
};

inline Error input_error(const std::string& code, const std::string& what) {
  return Error(ErrorClass::Input, code, what);
}
inline Error math_error(const std::string& code, const std::string& what) {
  return Error(ErrorClass::Math, code, what);
}
inline Error internal_error(const std::string& what) {
  return Error(ErrorClass::Internal, "Internal", what);
}

/// Throws Error{Internal} when a verified postcondition fails.
inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw internal_error(what);
}

} // namespace solvshadow

#endif
