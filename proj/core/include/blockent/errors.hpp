#pragma once

#include <stdexcept>
#include <string>

namespace blockent {

// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    double deviation;
    explicit NotHermitian(double dev)
        : Error("matrix is not Hermitian, max |m - m^dag| entry = " + std::to_string(dev)),
          deviation(dev) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct InvalidState : Error {
    using Error::Error;
};

struct NotIsometry : Error {
    using Error::Error;
};

struct RankMismatch : Error {
    using Error::Error;
};

struct EmptyBranch : Error {
    using Error::Error;
};

struct NotBlockDiagonal : Error {
    using Error::Error;
};

struct PartitionInvalid : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct NonPositiveTemperature : Error {
    using Error::Error;
};

struct InfiniteModeUnsupported : Error {
    using Error::Error;
};

struct Overflow : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct BudgetZero : Error {
    using Error::Error;
};

}  // namespace blockent
