#pragma once

#include <stdexcept>
#include <string>

namespace hexspline {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularKnots : Error { using Error::Error; };
struct SingularTransform : Error { using Error::Error; };
struct NotCanonical : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct PoleAtC : Error { using Error::Error; };
struct DomainOrder : Error { using Error::Error; };
struct UnsupportedOrder : Error { using Error::Error; };
struct OnSingularSet : Error { using Error::Error; };
struct QuadFail : Error { using Error::Error; };

struct PreconditionViolated : Error {
    PreconditionViolated(std::string which, const std::string& msg)
        : Error(msg), condition(std::move(which)) {}
    std::string condition;
};

}  // namespace hexspline
