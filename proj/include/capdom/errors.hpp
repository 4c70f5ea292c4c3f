#pragma once

#include <stdexcept>
#include <string>

namespace capdom {

/// Malformed input text (instance files, rational literals, result files).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally invalid data (bad graph, bad embedding, infeasible input, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Instance exceeds a configured size cap (exact oracle only).
struct ScaleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace capdom
