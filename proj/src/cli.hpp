#pragma once

namespace evd {

/// Full command-line front end; returns the process exit code.
/// 0 success, 2 usage/parse failure, 3 asymmetric input, 4 strict-mode overflow.
int run_cli(int argc, const char* const* argv);

}  // namespace evd
