#pragma once

#include <stdexcept>
#include <string>

namespace ablsem {

enum class ErrorKind {
    input,
    invalid_scenario,
    impossible_collapse,
    undefined_conditional,
    no_data,
    closest_world_nonexistent,
};

/// Base for every error raised by the library. The kind selects the CLI exit code.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

class InputError : public Error {
  public:
    explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

/// A conditional probability whose condition has zero weight.
class UndefinedConditional : public Error {
  public:
    UndefinedConditional(const std::string& what, double denominator)
        : Error(ErrorKind::undefined_conditional, what), denominator_(denominator) {}

    [[nodiscard]] double denominator() const noexcept { return denominator_; }

  private:
    double denominator_;
};

} // namespace ablsem
