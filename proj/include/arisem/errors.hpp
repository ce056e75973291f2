#pragma once

#include <stdexcept>
#include <string>

namespace arisem {

enum class ErrorKind {
    NotASemigroup,       // sequence not realizable by a free commutative monoid
    ResourceGuard,       // brute-force guard tripped
    NonGeometricGrowth,  // q estimation failed
    NoConvergence,       // A estimation failed
    DomainError,         // argument outside the operation's domain
    InsufficientData,    // n_max too small for the requested tolerance
    ZeroDenominator,
    DivergentEnvelope,   // envelope family violates the convergence hypothesis
    NoDecay,             // residuals show no decay over the window
    TailUnbounded,       // no decay bound available beyond the truncation point
    UsageError,          // bad CLI invocation
    ConfigError,         // bad config file
    IoError,
    Internal,            // internal consistency violation
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace arisem
