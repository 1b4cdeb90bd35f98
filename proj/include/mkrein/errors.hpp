#pragma once

#include <stdexcept>
#include <string>

namespace mkrein {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad measure construction: empty atom list, negative weight, zero total mass.
struct InvalidMeasure : Error {
    using Error::Error;
};

// Precondition violation on an operation argument.
struct InvalidArgument : Error {
    using Error::Error;
};

// Evaluation requested exactly at a singular point (e.g. z equal to an atom).
struct SingularEvaluation : Error {
    using Error::Error;
};

// Adaptive quadrature exhausted its evaluation budget above tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

// Integrand returned NaN or infinity along the contour.
struct NonFiniteSample : Error {
    using Error::Error;
};

// Closed-form residue formulas require pairwise distinct atoms.
struct DegenerateSpectrum : Error {
    using Error::Error;
};

} // namespace mkrein
