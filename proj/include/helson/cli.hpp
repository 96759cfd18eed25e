#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace helson {

struct SuiteResult {
  bool pass = true;
  std::vector<std::string> lines;  // one "PASS ..." / "FAIL ..." per check
};

/// Verification suites: chain, factorization, carleman, s0diff, decay,
/// sampling.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

std::uint64_t default_seed();  // HELSON_SEED if set

/// Exit codes: 0 success, 1 failed verification or run, 2 usage error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helson
