#include "arisem/errors.hpp"

namespace arisem {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotASemigroup: return "NotASemigroup";
        case ErrorKind::ResourceGuard: return "ResourceGuard";
        case ErrorKind::NonGeometricGrowth: return "NonGeometricGrowth";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::DivergentEnvelope: return "DivergentEnvelope";
        case ErrorKind::NoDecay: return "NoDecay";
        case ErrorKind::TailUnbounded: return "TailUnbounded";
        case ErrorKind::UsageError: return "UsageError";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace arisem
