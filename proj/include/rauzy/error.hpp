#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rauzy {

enum class ErrorKind {
  UnknownLetter,
  InvalidSpec,
  NotProlongable,
  WordFinite,
  BudgetExceeded,
  NotEndomorphism,
  NoValidOrder,
  BispecialOrderConflict,
  NotScheme,
  AmbiguousNumbering,
  InvalidPath,
  NotFound,
  NoSupportEdge,
  DegenerateResult,
  InconsistentInput,
  NotFoundWithinBudget,
  PeriodMismatch,
  SeedErasable,
  UnboundedInterior,
  NoPrimitiveComponent,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rauzy
