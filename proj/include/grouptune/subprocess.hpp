#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace grouptune {

struct RunResult {
    int exit_code = -1;
    bool timed_out = false;
    bool exec_failed = false; // binary missing / not executable
    double wall_seconds = 0.0;
    std::string stdout_data;
    std::string stderr_data;
};

// Runs argv (no shell) in `workdir`, capturing stdout and stderr. When
// timeout_seconds > 0 the process group is killed on expiry. pin_core >= 0
// pins the child to that CPU, best effort. Throws IoError only on local
// plumbing failures (fork/pipe); a missing binary reports exec_failed.
RunResult run_command(const std::vector<std::string>& argv,
                      const std::filesystem::path& workdir,
                      double timeout_seconds = 0.0, int pin_core = -1);

} // namespace grouptune
