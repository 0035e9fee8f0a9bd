#pragma once

#include <stdexcept>
#include <string>

namespace rategraph {

// Bad input: malformed instance, out-of-range argument, violated precondition.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PartsSumMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct NotProperSubset : ValidationError {
    using ValidationError::ValidationError;
};

struct DimensionTooSmall : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidStatistic : ValidationError {
    using ValidationError::ValidationError;
};

// The target state has infinite expected hitting time under the given rates
// (or cannot occur at all, e.g. a k-assignment with k > min(m,n)).
struct UnreachableTarget : ValidationError {
    using ValidationError::ValidationError;
};

// Resource caps. Surfaced separately so callers can map them to a distinct
// exit code instead of treating them as bad input.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InstanceTooLarge : ResourceLimitError {
    using ResourceLimitError::ResourceLimitError;
};

struct StateSpaceTooLarge : ResourceLimitError {
    using ResourceLimitError::ResourceLimitError;
};

}  // namespace rategraph
