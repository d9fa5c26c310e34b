#pragma once

#include <stdexcept>
#include <string>

namespace nlfv {

// A proposed time step exceeds the stability bound of the explicit update.
struct cfl_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The kernel support is not an integer multiple of the cell width.
struct divisibility_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computed state violates a guarantee the scheme is supposed to enforce
// (bug trap: points at a flux or time-step defect, not at user input).
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Every stability bound of the model is infinite or zero (e.g. psi == 0).
struct degenerate_model_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Configuration file problems; the message carries location or key context.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nlfv
