#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tfp_cli/config.hpp"

namespace tfp::cli {

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_solver = 2 };

struct RunOptions {
    StudyConfig config;
    bool plots = false;
    std::size_t workers = 1;
};

/// Worker cap from TFP_THREADS, else the hardware concurrency (at least 1).
std::size_t workers_from_env();

int cmd_painleve(const RunOptions& opts, std::ostream& err);
int cmd_groundstate(const RunOptions& opts, std::ostream& err);
int cmd_spectrum(const RunOptions& opts, std::ostream& err);
int cmd_bs(const RunOptions& opts, std::ostream& err);
int cmd_study(const RunOptions& opts, std::ostream& err);

/// Full command line: tfp <painleve|groundstate|spectrum|bs|study>
/// [--config FILE] [--out DIR] [--plots] [key=value ...].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace tfp::cli
