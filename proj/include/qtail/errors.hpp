#pragma once

#include <stdexcept>
#include <string>

namespace qtail {

// Precondition violated: index out of range, zero divisor, unknown name.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A value cannot be expressed in the requested form, e.g. relative
// exponents that are not integral powers of q.
struct representation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A comparison asked for more coefficients than were computed.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An oracle limit (projector color, crossings, boundary points) was exceeded.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal identity that must hold exactly did not, e.g. a division
// expected to be exact left a remainder.
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qtail
