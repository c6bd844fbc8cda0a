#pragma once

#include <CLI11.hpp>

namespace carpet_recur::cli {

/// Adds every subcommand to `app`. Callbacks throw carpet_recur::Error.
void register_commands(CLI::App& app);

}  // namespace carpet_recur::cli
