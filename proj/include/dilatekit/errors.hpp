#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace dilatekit {

/// Base of every error raised by the library. `witness()` carries a
/// JSON-serialized counterexample or location when one exists.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, nlohmann::json witness = nullptr)
        : std::runtime_error(what), witness_(std::move(witness)) {}

    const nlohmann::json& witness() const noexcept { return witness_; }

private:
    nlohmann::json witness_;
};

#define DILATEKIT_ERROR(Name)                       \
    class Name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

DILATEKIT_ERROR(DimensionMismatch);
DILATEKIT_ERROR(DomainMismatch);
DILATEKIT_ERROR(DivisionByZero);
DILATEKIT_ERROR(SingularMatrix);
DILATEKIT_ERROR(PreconditionFailed);
DILATEKIT_ERROR(NonCommuting);
DILATEKIT_ERROR(NotInjective);
DILATEKIT_ERROR(NotIntertwining);
DILATEKIT_ERROR(HypothesisFailed);
DILATEKIT_ERROR(RangeViolation);
DILATEKIT_ERROR(GenerationExhausted);
DILATEKIT_ERROR(ParseError);
DILATEKIT_ERROR(DenominatorZero);
DILATEKIT_ERROR(InvalidArgument);

#undef DILATEKIT_ERROR

/// An error raised while running a generated instance, annotated with the
/// suite, trial counter and seed that produced it.
class SuiteError : public Error {
public:
    SuiteError(const std::string& suite, std::size_t trial, std::uint64_t seed, const Error& cause)
        : Error(suite + " trial " + std::to_string(trial) + " (seed " + std::to_string(seed) +
                    "): " + cause.what(),
                cause.witness()),
          suite_(suite), trial_(trial) {}

    const std::string& suite() const noexcept { return suite_; }
    std::size_t trial() const noexcept { return trial_; }

private:
    std::string suite_;
    std::size_t trial_;
};

}  // namespace dilatekit
