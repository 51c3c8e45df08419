#ifndef BERGMAN_CLI_HPP
#define BERGMAN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bergman
{

enum ExitCode : int {
    exit_pass = 0,
    exit_check_failed = 1,
    exit_input_error = 2,
};

// Runs one subcommand (args[0] is the program name) and writes a single JSON
// document to `out`. Diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// FNV-1a, 64 bit, as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

// BERGMAN_THREADS, falling back to 1 when unset or invalid.
int thread_count_from_env();

} // namespace bergman

#endif
