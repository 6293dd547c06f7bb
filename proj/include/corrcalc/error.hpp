#pragma once

#include <stdexcept>
#include <string>

namespace corrcalc {

// Every failure carries a stable machine-readable code (e.g. "RelatorViolation",
// "TruncationEscape") so the CLI can echo it in structured error reports.
class Error : public std::runtime_error
{
public:
  Error(std::string code, const std::string &message)
    : std::runtime_error(message), code_(std::move(code))
  {}

  const std::string &code() const noexcept { return code_; }

private:
  std::string code_;
};

} // namespace corrcalc
