#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oneharm {

enum class ErrorKind {
  domain,
  branch_ambiguity,
  iteration,
  divergence,
  path,
  stiffness,
  positivity,
  conditioning,
  validation,
  fit,
  accuracy,
  usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type; `kind()` is stable, the message is not.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace oneharm
