#pragma once

#include <stdexcept>
#include <string>

namespace qdv {

// Closure or enumeration exceeded its declared cap.
struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A generating set failed to reach the expected group order.
struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A callback violated its contract (e.g. an "action" that is not an action).
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two independent computations of the same quantity disagree.
struct InternalConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A unitary does not normalize the displacement operators.
struct NotCliffordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qdv
