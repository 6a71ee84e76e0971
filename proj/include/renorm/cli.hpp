#pragma once

namespace renorm::cli {

/// Parse and run one subcommand. Exit codes: 0 success, 2 input error,
/// 3 method inapplicable, 4 internal invariant failure.
int run(int argc, const char* const* argv);

}  // namespace renorm::cli
