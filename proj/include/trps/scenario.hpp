#pragma once

#include <string>

#include "trps/config.hpp"
#include "trps/io.hpp"

namespace trps {

// Runs one scenario end to end and writes every requested product under
// out_dir.  On failure, files created by this run are removed before the
// error propagates.  Returns the manifest of emitted files.
Manifest run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

// Writes gnuplot scripts next to the data files listed in the manifest and
// returns the updated manifest.  A script that would reference a data file
// absent from the manifest is an error.
Manifest emit_plot_scripts(const Manifest& manifest);

}  // namespace trps
