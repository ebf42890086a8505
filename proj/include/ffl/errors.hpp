#pragma once

#include <stdexcept>
#include <string>

namespace ffl {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& msg) : Error(msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

struct DomainViolation : Error {
    explicit DomainViolation(const std::string& msg) : Error(msg) {}
};

struct EpsilonNonpositive : Error {
    explicit EpsilonNonpositive(const std::string& msg) : Error(msg) {}
};

struct NonpositiveInput : Error {
    explicit NonpositiveInput(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct BadRank : Error {
    explicit BadRank(const std::string& msg) : Error(msg) {}
};

struct NotInvertible : Error {
    explicit NotInvertible(const std::string& msg) : Error(msg) {}
};

struct SpectrumEscape : Error {
    explicit SpectrumEscape(const std::string& msg) : Error(msg) {}
};

struct RankMismatch : Error {
    explicit RankMismatch(const std::string& msg) : Error(msg) {}
};

struct NotAnnihilating : Error {
    explicit NotAnnihilating(const std::string& msg) : Error(msg) {}
};

struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& msg) : Error(msg) {}
};

/// Thrown when a validated wrapper (Projection, Idempotent, ...) rejects its input.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& msg) : Error(msg) {}
};

}  // namespace ffl
