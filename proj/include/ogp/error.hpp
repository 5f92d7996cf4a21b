#pragma once

#include <stdexcept>
#include <string>

namespace ogp {

struct SourceLoc {
    int line = 0;
    int column = 0;

    std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

/// Base of every error raised by the library. The CLI maps the subclasses
/// onto exit codes: input errors (syntax, resolution, labelling, contract)
/// exit 2, resource errors exit 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, SourceLoc loc)
        : Error("syntax error at " + loc.str() + ": " + msg), loc_(loc) {}
    SourceLoc loc() const { return loc_; }

private:
    SourceLoc loc_;
};

/// Unresolved identifier, type mismatch, undeclared domain.
class ResolveError : public Error {
public:
    ResolveError(const std::string& msg, SourceLoc loc)
        : Error("error at " + loc.str() + ": " + msg), loc_(loc) {}
    SourceLoc loc() const { return loc_; }

private:
    SourceLoc loc_;
};

class LabelError : public Error {
public:
    using Error::Error;
};

/// A precondition of an operation was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

class EvalError : public Error {
public:
    using Error::Error;
};

/// Enumeration or state-space exploration exceeded its configured cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace ogp
