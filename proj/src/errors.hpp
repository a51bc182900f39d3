#pragma once

#include <stdexcept>
#include <string>

namespace sqpd {

// Error categories; values double as CLI exit codes.
enum class ErrorCode : int {
    config      = 1,  // bad parameters, bad config file, bad arguments
    integration = 2,  // integrator tolerance or state-validity violation
    convergence = 3,  // truncation convergence failure
    internal    = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

struct IntegrationError : Error {
    explicit IntegrationError(const std::string& what) : Error(ErrorCode::integration, what) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& what) : Error(ErrorCode::convergence, what) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

}  // namespace sqpd
