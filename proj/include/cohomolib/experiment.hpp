// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cohomo {

// Process exit codes of the runner.
enum ExitCode : int { kExitOk = 0, kExitFailed = 2, kExitBudget = 3, kExitConfig = 4 };

struct RunResult {
    int exit_code = kExitOk;
    std::string json;  // report: config echo with defaults, version, results, checks
    std::string csv;   // plot-ready table, may be empty
};

// One experiment from a strict JSON config {"command": ..., ...}; unknown keys
// are rejected. Never throws.
RunResult run_experiment(std::string_view config_json);

// Keys accepted by a command (empty for unknown commands).
std::vector<std::string> experiment_keys(std::string_view command);
std::vector<std::string> experiment_commands();

const char* library_version() noexcept;

} // namespace cohomo
