#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace shiftseq {

// Base error carrying a stable machine-readable name alongside the message.
// The name is what the CLI prints and what callers should dispatch on.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

// Budget overruns get their own base so the CLI can map them to exit code 3.
class BudgetError : public Error {
public:
  using Error::Error;
};

#define SHIFTSEQ_ERROR(ClassName, ErrorName, Base)    \
  class ClassName : public Base {                     \
  public:                                             \
    explicit ClassName(const std::string& message)    \
        : Base(ErrorName, message) {}                 \
  }

SHIFTSEQ_ERROR(EmptyShiftError, "EmptyShift", Error);
SHIFTSEQ_ERROR(InvalidGraphError, "InvalidGraph", Error);
SHIFTSEQ_ERROR(InvalidSpecError, "InvalidSpec", Error);
SHIFTSEQ_ERROR(WordNotInLanguageError, "WordNotInLanguage", Error);
SHIFTSEQ_ERROR(WordTooShortError, "WordTooShort", Error);
SHIFTSEQ_ERROR(HypothesisViolatedError, "HypothesisViolated", Error);
SHIFTSEQ_ERROR(UncertifiedInputError, "UncertifiedInput", Error);
SHIFTSEQ_ERROR(NoSuchLengthError, "NoSuchLength", Error);
SHIFTSEQ_ERROR(ClosureBudgetError, "ClosureBudgetExceeded", BudgetError);
SHIFTSEQ_ERROR(PrefixBudgetError, "BudgetExceeded", BudgetError);

#undef SHIFTSEQ_ERROR

}  // namespace shiftseq
