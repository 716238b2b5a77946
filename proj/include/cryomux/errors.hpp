#pragma once

#include <stdexcept>
#include <string>

namespace cryomux {

/// Configuration file is syntactically or semantically invalid. `where` is a
/// JSON-pointer-like path or a line anchor into the offending document.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Nonlinear fit failed to converge or the input is degenerate.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical integration did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_tolerance)
        : std::runtime_error(what), achieved_(achieved_tolerance) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace cryomux
