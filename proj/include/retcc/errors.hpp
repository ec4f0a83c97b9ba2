#pragma once

#include <stdexcept>
#include <string>

namespace retcc {

// exit-code mapping used by the CLI: validation -> 2, convergence -> 3, io -> 4
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace retcc
