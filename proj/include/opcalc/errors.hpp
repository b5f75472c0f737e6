#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace opcalc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A truncated series or expansion is too short for the requested degree.
struct TruncationError : Error {
    using Error::Error;
};

struct InvertError : Error {
    using Error::Error;
};

struct ReverseError : Error {
    using Error::Error;
};

struct InvalidOperator : Error {
    using Error::Error;
};

struct NotDegreeReducing : Error {
    NotDegreeReducing(std::size_t deg, const std::string& what)
        : Error(what), degree(deg) {}
    std::size_t degree;
};

struct NotDelta : Error {
    using Error::Error;
};

struct NotDXEligible : Error {
    using Error::Error;
};

struct NotDX : Error {
    NotDX(long diag, const std::string& what) : Error(what), t(diag) {}
    long t;
};

struct NegativePowerViolation : Error {
    using Error::Error;
};

struct NoCertificate : Error {
    using Error::Error;
};

struct MissingVanishingCertificate : Error {
    using Error::Error;
};

struct WindowTooSmall : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::size_t l, std::size_t c, std::vector<std::string> exp,
               const std::string& msg);

    std::size_t line;
    std::size_t column;
    std::vector<std::string> expected;
};

}  // namespace opcalc
