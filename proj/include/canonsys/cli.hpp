#ifndef CANONSYS_CLI_HPP
#define CANONSYS_CLI_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace canon::cli {

/// Exit codes of `run`.
enum ExitCode { ok = 0, computation_error = 1, config_error = 2 };

/// Entry point of the canonsys tool. Output goes to `out` unless --out names
/// a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Default --jobs: CANON_JOBS when set to a positive integer, else 1.
int default_jobs();

/// Runs f(0..n-1) on up to `jobs` threads; results keep input order. The
/// first exception (by index) is rethrown after all workers finish.
template <typename R>
std::vector<R> ordered_map(int n, int jobs, const std::function<R(int)>& f);

}  // namespace canon::cli

#include "canonsys/detail/ordered_map.hpp"

#endif  // CANONSYS_CLI_HPP
