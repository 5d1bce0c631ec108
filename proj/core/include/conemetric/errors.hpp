#pragma once

#include <stdexcept>
#include <string>

namespace conemetric {

// Error taxonomy. The CLI maps these to its exit-code contract:
// parse_error -> 2, numerical_error -> 4, everything else -> 3.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text/bytes could not be understood at all.
struct parse_error : error {
    using error::error;
};

// An argument lies outside the mathematical domain of the operation.
struct domain_error : error {
    using error::error;
};

// A value violates a structural invariant of its own type.
struct validation_error : error {
    using error::error;
};

// A theorem hypothesis required by the operation does not hold.
struct hypothesis_error : error {
    using error::error;
};

// Order -1 without a finite-area hint: both cusp and infinite end occur.
struct indeterminate_error : error {
    using error::error;
};

// Branch data admits no closed orientable total space.
struct impossible_cover_error : error {
    using error::error;
};

// Mesh fails triangle inequalities or is not a closed surface complex.
struct invalid_mesh_error : error {
    using error::error;
};

// The discrete solvability criterion fails (nonzero mean right-hand side).
struct no_solution_error : error {
    using error::error;
};

// Grid or resolution preconditions of a solver are not met.
struct configuration_error : error {
    using error::error;
};

// Fields with incompatible grids were combined.
struct shape_error : error {
    using error::error;
};

// An iteration or quadrature failed to reach its tolerance within its cap.
struct numerical_error : error {
    using error::error;
};

} // namespace conemetric
