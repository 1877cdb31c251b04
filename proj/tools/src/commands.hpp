#pragma once

#include "config.hpp"

namespace tptmap::cli {

void cmd_sample(const RunConfig& cfg);
void cmd_committor(const RunConfig& cfg);
void cmd_fd(const RunConfig& cfg);
void cmd_sweep(const RunConfig& cfg);
void cmd_canalysis(const RunConfig& cfg);
void cmd_rate(const RunConfig& cfg);

}  // namespace tptmap::cli
