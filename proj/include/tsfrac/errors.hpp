#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tsfrac {

/// Base error for the whole library.
///
/// Every throw site uses one of the named subclasses below. The `kind()`
/// split drives the CLI exit codes: Validation -> 2 (bad inputs, flags,
/// off-scale points), Domain -> 3 (numerical domain violations during
/// evaluation).
class Error : public std::runtime_error {
public:
    enum class Kind { Validation, Domain };

    Error(Kind kind, std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), kind_(kind), code_(std::move(code)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    Kind kind_;
    std::string code_;
};

struct EmptyScale : Error {
    explicit EmptyScale(const std::string& msg)
        : Error(Kind::Validation, "EmptyScale", msg) {}
};

struct InvalidSegment : Error {
    explicit InvalidSegment(const std::string& msg)
        : Error(Kind::Validation, "InvalidSegment", msg) {}
};

struct NotInScale : Error {
    explicit NotInScale(const std::string& msg)
        : Error(Kind::Validation, "NotInScale", msg) {}
};

struct BadRange : Error {
    explicit BadRange(const std::string& msg)
        : Error(Kind::Validation, "BadRange", msg) {}
};

struct OutsideKappa : Error {
    explicit OutsideKappa(const std::string& msg)
        : Error(Kind::Validation, "OutsideKappa", msg) {}
};

struct InvalidOrder : Error {
    explicit InvalidOrder(const std::string& msg)
        : Error(Kind::Validation, "InvalidOrder", msg) {}
};

struct UseIntegerCalculus : Error {
    explicit UseIntegerCalculus(const std::string& msg)
        : Error(Kind::Validation, "UseIntegerCalculus", msg) {}
};

struct NotIncreasing : Error {
    explicit NotIncreasing(const std::string& msg)
        : Error(Kind::Validation, "NotIncreasing", msg) {}
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(Kind::Validation, "ParseError", msg + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

struct UnknownSymbol : Error {
    UnknownSymbol(const std::string& name, std::size_t position)
        : Error(Kind::Validation, "UnknownSymbol",
                "'" + name + "' at position " + std::to_string(position)),
          name_(name), position_(position) {}
    const std::string& name() const noexcept { return name_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::string name_;
    std::size_t position_;
};

struct IoError : Error {
    explicit IoError(const std::string& msg)
        : Error(Kind::Validation, "IoError", msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg)
        : Error(Kind::Domain, "DomainError", msg) {}
};

}  // namespace tsfrac
