#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ltci {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 3.0e8;  // m/s

// Thrown when a detector's applicability condition fails, e.g. the
// dual-scale FFT readout requires (fc/fs)/M <= 1.
class ConditionViolated : public std::runtime_error {
public:
    explicit ConditionViolated(const std::string& msg) : std::runtime_error(msg) {}
};

// Config-file problems, with 1-based line/column for diagnostics.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& msg, int line, int column = 0)
        : std::runtime_error(msg + " (line " + std::to_string(line) +
                             (column > 0 ? ", column " + std::to_string(column) : "") + ")"),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ltci
