#pragma once

#include <stdexcept>
#include <string>

namespace d4 {

// Bad arguments or violated preconditions.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Value outside the domain of a function (log of a nonpositive number, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// An enclosure is too wide to decide; the caller should raise the precision.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A theorem's hypotheses could not be certified.
struct ApplicabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Something that must hold by construction did not.
struct IntegrityError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace d4
