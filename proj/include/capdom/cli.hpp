#pragma once

namespace capdom {

/// Command-line driver. Exit codes: 0 ok, 2 parse error, 3 validation error,
/// 4 oracle scale exceeded, 5 verification failure.
int run_cli(int argc, const char* const* argv);

} // namespace capdom
