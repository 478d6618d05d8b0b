#pragma once

#include <stdexcept>
#include <string>

namespace plie {

// Malformed request: mismatched primes/dimensions, bad flags, t = 0 quotients.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input outside an operation's mathematical domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotAUnit : DomainError {
    NotAUnit(const std::string& what) : DomainError(what) {}
};

struct NotDivisible : DomainError {
    NotDivisible(const std::string& what) : DomainError(what) {}
};

struct PrecisionExhausted : DomainError {
    PrecisionExhausted(const std::string& what) : DomainError(what) {}
};

struct OutOfChart : DomainError {
    OutOfChart(const std::string& what) : DomainError(what) {}
};

struct OutOfDomain : DomainError {
    OutOfDomain(const std::string& what) : DomainError(what) {}
};

struct SingularBasis : DomainError {
    SingularBasis(const std::string& what) : DomainError(what) {}
};

// A guaranteed contraction or Cauchy property failed at runtime. This never
// fires on a correct group model; it signals a broken model or a bug.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonContraction : VerificationError {
    NonContraction(const std::string& what) : VerificationError(what) {}
};

struct ConvergenceFailure : VerificationError {
    ConvergenceFailure(const std::string& what) : VerificationError(what) {}
};

}  // namespace plie
