#pragma once

#include <stdexcept>
#include <string>

namespace solitonic {

enum class ErrorKind {
    PoleEvaluation,
    NonConvergence,
    CriticalValue,
    Coincidence,
    Constraint,
    FocusingObstruction,
    NonCriticalPoint,
    Size,
    ZeroBeta,
    ZeroNu,
    ZeroGamma,
    Positivity,
    Ordering,
    Singularity,
    Config,
    Io
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::PoleEvaluation: return "pole-evaluation";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::CriticalValue: return "critical-value";
    case ErrorKind::Coincidence: return "coincidence";
    case ErrorKind::Constraint: return "constraint-violation";
    case ErrorKind::FocusingObstruction: return "focusing-obstruction";
    case ErrorKind::NonCriticalPoint: return "non-critical-point";
    case ErrorKind::Size: return "size";
    case ErrorKind::ZeroBeta: return "zero-beta";
    case ErrorKind::ZeroNu: return "zero-nu";
    case ErrorKind::ZeroGamma: return "zero-gamma";
    case ErrorKind::Positivity: return "positivity";
    case ErrorKind::Ordering: return "ordering";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace solitonic
