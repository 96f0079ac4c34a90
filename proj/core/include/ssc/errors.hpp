#pragma once

#include <stdexcept>
#include <string>

namespace ssc {

/// Malformed or invalid network document. `location` is a JSON-path-like
/// pointer into the document ("edges[2].weight") or empty.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string location, const std::string& message)
        : std::runtime_error(location.empty() ? message : location + ": " + message),
          location_(std::move(location)) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

/// Cells that overlap, miss nodes, or reference nodes out of range.
class InvalidPartition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation requires an equitable partition and was given one that is not.
class NotEquitable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Partition enumeration would exceed the configured follower cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constraint system has no admissible weight assignment, or the sampler
/// ran out of redraws.
class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ssc
