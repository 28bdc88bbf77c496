#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tristrat {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t line, std::size_t column)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class NamespaceError : public Error {
public:
    using Error::Error;
};

/// Malformed model document (not JSON, or wrong shape).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed document violating a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class UnknownState : public Error {
public:
    using Error::Error;
};

class UnknownAction : public Error {
public:
    using Error::Error;
};

class UnknownAtom : public Error {
public:
    using Error::Error;
};

class IncompleteAssignment : public Error {
public:
    using Error::Error;
};

class FreeUnderTemporal : public Error {
public:
    using Error::Error;
};

class NotASentence : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class InvalidPartition : public Error {
public:
    using Error::Error;
};

class UnsupportedFragment : public Error {
public:
    using Error::Error;
};

class InconsistentSplit : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

} // namespace tristrat
