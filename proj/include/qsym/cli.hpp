#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsym {

// Exit statuses besides the ErrorKind codes 10..20.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Runs one subcommand; args exclude the program name. The report goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "a", "bi", "a+bi", "a-bi" (also with j); throws ParameterError otherwise.
std::complex<double> parse_complex(const std::string& text);

// Rounds to 15 significant digits so serialized output is stable.
double round15(double x);

}  // namespace qsym
