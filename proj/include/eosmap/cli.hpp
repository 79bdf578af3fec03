#pragma once

namespace eosmap {

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 numerical
// failure.
int run_cli(int argc, const char* const* argv);

}  // namespace eosmap
