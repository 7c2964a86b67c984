#pragma once

#include <stdexcept>
#include <string>

namespace kp2stab {

enum class ErrorCategory { config, dimension, solver, diagnostic, io };

const char* category_name(ErrorCategory c);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}
    ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorCategory::config, w) {}
};
struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(ErrorCategory::dimension, w) {}
};
struct SolverError : Error {
    explicit SolverError(const std::string& w) : Error(ErrorCategory::solver, w) {}
};
struct DiagnosticError : Error {
    explicit DiagnosticError(const std::string& w) : Error(ErrorCategory::diagnostic, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorCategory::io, w) {}
};

}  // namespace kp2stab
