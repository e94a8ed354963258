#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace aterm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed term text. `position` is the 0-based byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(std::string name);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Mathematically undefined operation (division by zero, negative exponent, bad base).
class DomainError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public DomainError {
public:
    DivisionByZero() : DomainError("division by zero") {}
};

class NegativeExponent : public DomainError {
public:
    NegativeExponent() : DomainError("negative exponent") {}
};

class InvalidBase : public DomainError {
public:
    using DomainError::DomainError;
};

/// An intermediate value would exceed the bit budget.
/// `required_bits` is the bound that tripped the check (saturated at UINT64_MAX).
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t required_bits, std::uint64_t max_bits,
                   const std::string& hint = {});
    std::uint64_t required_bits() const noexcept { return required_bits_; }
    std::uint64_t max_bits() const noexcept { return max_bits_; }

private:
    std::uint64_t required_bits_;
    std::uint64_t max_bits_;
};

/// Caller violated a documented precondition (argument range, method cap).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace aterm
