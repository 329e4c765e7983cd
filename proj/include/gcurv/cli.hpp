#ifndef GCURV_CLI_HPP
#define GCURV_CLI_HPP

namespace gcurv {

/// Command-line entry point. Exit codes: 0 success, 1 solver/numerical
/// failure, 2 configuration error. Results go to stdout (or --out) as a
/// single JSON document; errors go to stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace gcurv

#endif
