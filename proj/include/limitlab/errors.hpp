#pragma once

#include <stdexcept>
#include <string>

namespace limitlab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define LIMITLAB_ERROR(Name)                                            \
  class Name : public Error {                                           \
  public:                                                               \
    using Error::Error;                                                 \
    const char* kind() const noexcept override { return #Name; }        \
  }

/// An intersection or difference between two thin atoms that the rule
/// table cannot reduce (e.g. two distinct Cantor sets).
LIMITLAB_ERROR(UnsupportedIntersection);
LIMITLAB_ERROR(RangeError);
LIMITLAB_ERROR(OutsideDomain);
LIMITLAB_ERROR(DivisionByPossiblyZero);
LIMITLAB_ERROR(NonPolynomialQuotient);
LIMITLAB_ERROR(PrerequisiteNotMet);
LIMITLAB_ERROR(UndecidableDensity);
LIMITLAB_ERROR(UnknownAtom);

#undef LIMITLAB_ERROR

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line), column_(column) {}
  const char* kind() const noexcept override { return "SyntaxError"; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace limitlab
