#pragma once

#include <stdexcept>

namespace rmtcross {

/// Convergence or solver failure in a numerical routine.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rmtcross
