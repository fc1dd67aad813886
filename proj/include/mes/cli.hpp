#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mes {

/// Runtime configuration shared by all subcommands.
struct CliConfig {
  int N = 60;
  unsigned P = 256;
  int tol_exp = 128;
  unsigned long seed = 1;
  std::string out;
  bool pretty = false;
};

/// Exit codes: 0 success, 1 verification failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mes
