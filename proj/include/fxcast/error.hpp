#pragma once

#include <stdexcept>
#include <string>

namespace fxcast {

/// Broad failure class; the CLI maps these onto process exit codes.
enum class ErrorKind { config, data, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Bad argument or configuration value (orders, fractions, horizons, format tokens).
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::config, what) {}
};

/// Input series violates a precondition (too short, non-finite, unordered).
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

/// Zero variance where a statistic divides by it.
class DegenerateSeries : public DataError {
public:
    explicit DegenerateSeries(const std::string& what) : DataError("degenerate series: " + what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

/// Optimizer exhausted its iteration budget without meeting the tolerance.
class NonConvergence : public NumericalError {
public:
    explicit NonConvergence(const std::string& what) : NumericalError("no convergence: " + what) {}
};

/// Regressor matrix is rank deficient.
class CollinearRegressors : public NumericalError {
public:
    explicit CollinearRegressors(const std::string& what) : NumericalError("collinear regressors: " + what) {}
};

}  // namespace fxcast
