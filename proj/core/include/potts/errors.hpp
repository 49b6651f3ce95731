#ifndef POTTS_ERRORS_HPP
#define POTTS_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace potts {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A container or matrix has dimensions inconsistent with the model
/// parameters. Carries the name of the offending field.
class DimensionError : public Error {
public:
    DimensionError(std::string field, std::size_t expected, std::size_t got)
        : Error("dimension mismatch in '" + field + "': expected " +
                std::to_string(expected) + ", got " + std::to_string(got)),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A scalar field holds a value outside its admissible range.
class InvalidValueError : public Error {
public:
    InvalidValueError(std::string field, const std::string& detail)
        : Error("invalid value in '" + field + "': " + detail),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// An exhaustive enumeration would visit more states than allowed.
class BudgetError : public Error {
public:
    BudgetError(double required, std::uint64_t budget)
        : Error("enumeration budget exceeded: need " +
                std::to_string(required) + " states, budget is " +
                std::to_string(budget)),
          required_(required) {}

    /// Number of states the rejected enumeration would have visited.
    double required() const noexcept { return required_; }

private:
    double required_;
};

/// The requested sector contains no configuration at this system size.
class EmptySectorError : public Error {
public:
    EmptySectorError() : Error("sector is empty at this system size") {}
    explicit EmptySectorError(const std::string& detail)
        : Error("sector is empty: " + detail) {}
};

}  // namespace potts

#endif
