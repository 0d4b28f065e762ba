#ifndef CANONSYS_ERRORS_HPP
#define CANONSYS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "canonsys/core.hpp"

namespace canon {

enum class ErrorKind {
    domain,
    evaluation,
    indeterminate,
    configuration,
    unsupported,
    integration,
    singularity_proximity,
    limit_failure,
    conditioning,
    precondition,
};

const char* to_string(ErrorKind kind);

/// Base of every error raised by the library. Carries the failing module so
/// the CLI can emit structured diagnostics.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& what)
        : std::runtime_error(what), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(ErrorKind::configuration, "config", path.empty() ? what : path + ": " + what),
          path_(std::move(path)),
          detail_(what) {}

    /// JSON pointer-like location of the offending entry ("" for the root).
    const std::string& path() const noexcept { return path_; }
    /// The message without the path prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string path_;
    std::string detail_;
};

/// The integrator could not make progress; `reached` is the last accepted t.
class SingularityProximityError : public Error {
public:
    SingularityProximityError(double reached, const std::string& what)
        : Error(ErrorKind::singularity_proximity, "solver", what), reached_(reached) {}
    double reached() const noexcept { return reached_; }

private:
    double reached_;
};

class LimitError : public Error {
public:
    LimitError(std::string module, const std::string& what, std::vector<Complex> samples, double err)
        : Error(ErrorKind::limit_failure, std::move(module), what),
          samples_(std::move(samples)),
          err_(err) {}
    const std::vector<Complex>& samples() const noexcept { return samples_; }
    double error_estimate() const noexcept { return err_; }

private:
    std::vector<Complex> samples_;
    double err_;
};

class ConditioningError : public Error {
public:
    ConditioningError(std::string module, const std::string& what, Matrix2c matrix)
        : Error(ErrorKind::conditioning, std::move(module), what), matrix_(matrix) {}
    const Matrix2c& matrix() const noexcept { return matrix_; }

private:
    Matrix2c matrix_;
};

class IntegrationError : public Error {
public:
    IntegrationError(std::string module, const std::string& what, std::vector<std::pair<double, double>> trace)
        : Error(ErrorKind::integration, std::move(module), what), trace_(std::move(trace)) {}
    /// Subintervals on which the quadrature failed to converge.
    const std::vector<std::pair<double, double>>& trace() const noexcept { return trace_; }

private:
    std::vector<std::pair<double, double>> trace_;
};

}  // namespace canon

#endif  // CANONSYS_ERRORS_HPP
