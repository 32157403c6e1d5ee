#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

/// Base class for all library errors. Derived types distinguish invalid
/// inputs (ConfigError) from violated mathematical guarantees (CheckError):
/// a CheckError means an internal cross-check failed on valid input.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class CheckError : public Error {
public:
    using Error::Error;
};

// --- field construction ---
struct NotPrimeError : ConfigError { using ConfigError::ConfigError; };
struct EvenCharacteristicError : ConfigError { using ConfigError::ConfigError; };
struct NotPrimitivePolynomialError : ConfigError { using ConfigError::ConfigError; };
struct FieldTooLargeError : ConfigError { using ConfigError::ConfigError; };

// --- cyclotomic integers ---
struct MixedModulusError : ConfigError { using ConfigError::ConfigError; };

// --- character sums ---
struct ZeroCoefficientError : ConfigError { using ConfigError::ConfigError; };
struct OddQuotientError : ConfigError { using ConfigError::ConfigError; };

// --- code construction ---
struct BadExponentError : ConfigError { using ConfigError::ConfigError; };
struct DomainViolationError : ConfigError { using ConfigError::ConfigError; };
struct UnsupportedRegimeError : ConfigError { using ConfigError::ConfigError; };
struct BudgetExceededError : ConfigError { using ConfigError::ConfigError; };

// --- cyclotomic cosets / invariance ---
struct BadModulusError : ConfigError { using ConfigError::ConfigError; };
struct SampleBudgetZeroError : ConfigError { using ConfigError::ConfigError; };

// --- designs ---
struct WeightAbsentError : ConfigError { using ConfigError::ConfigError; };
struct BadLevelError : ConfigError { using ConfigError::ConfigError; };
struct MultiplicityViolationError : CheckError { using CheckError::CheckError; };
struct NonIntegralLambdaError : CheckError { using CheckError::CheckError; };
struct FormulaMismatchError : CheckError { using CheckError::CheckError; };

} // namespace cyclo
