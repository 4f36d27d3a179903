#pragma once

#include <string>

namespace gasdyn::cli {

inline constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  double horizon = 0.0;  // > 0 overrides the config value
  int refine = 0;        // halves scenario spacing k times
  long seed = -1;        // >= 0 overrides the config value; recorded in the summary
};

// Dispatches one subcommand run.  Output files land in out_dir; a summary of
// key: value lines goes both to summary.txt and stdout.  Returns the process
// exit code: 0 success, 2 bad configuration, 3 numerical failure, 4 scenario
// hypothesis violated.
int run(const Options& opt);

}  // namespace gasdyn::cli
