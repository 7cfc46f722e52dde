#pragma once

#include "CLI11.hpp"

namespace frlp::cli {

// Each function registers one subcommand on `app`; the subcommand callback
// stores its exit code in `exit_code`.
void AddFrlpCommand(CLI::App& app, int& exit_code);
void AddFaclocCommand(CLI::App& app, int& exit_code);
void AddBoundsCommand(CLI::App& app, int& exit_code);

}  // namespace frlp::cli
