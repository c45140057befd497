#ifndef QTHETA_ERRORS_HPP
#define QTHETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtheta
{

// Base of every error raised by the engine.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Caller broke a precondition (arity mismatch, bad arguments, unknown id...).
class UsageError : public Error
{
public:
    using Error::Error;
};

// A coefficient that had to be inverted is not a single monomial term.
class NotAUnit : public Error
{
public:
    using Error::Error;
};

// An expression is not in evaluable normal form. The message carries the
// AST path of the offending node when known.
class NonEvaluable : public Error
{
public:
    using Error::Error;
};

// A coefficient was requested beyond the validated truncation order.
class OrderExceeded : public Error
{
public:
    using Error::Error;
};

// The valuation bound of a sum does not tend to infinity over its range.
class DivergentBound : public Error
{
public:
    using Error::Error;
};

// Substitution or windowed expansion whose truncation cannot be bounded.
class UnsoundTruncation : public Error
{
public:
    using Error::Error;
};

// Rethrows the exception in flight as the same error kind, with `context`
// prepended to its message. Must be called from inside a catch block.
[[noreturn]] void rethrow_with_context(const std::string &context);

// Class name of an engine error ("NonEvaluable", ...), "Error" otherwise.
std::string error_kind(const std::exception &e);

} // namespace qtheta

#endif
