#pragma once

#include <stdexcept>

namespace qps {

// Dimension N < 1 where a state-space dimension is required.
struct invalid_dimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operand dimensions disagree with the configured N.
struct dimension_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// 2x2 integer matrix with determinant != 1.
struct not_unimodular : std::domain_error {
    using std::domain_error::domain_error;
};

// (kappa, lambda) with gcd != 1 cannot be completed to a unimodular matrix.
struct not_coprime : std::domain_error {
    using std::domain_error::domain_error;
};

// The intertwining system does not have a one-dimensional solution space.
struct representation_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A hard numerical residual bound was exceeded.
struct numerical_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A product of representation unitaries is not proportional to the unitary
// of the product element.
struct projectivity_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Phase choice outside the two marginality-compatible classes.
struct admissibility_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed or invariant-violating state document.
struct state_format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qps
