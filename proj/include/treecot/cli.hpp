#pragma once

namespace treecot::cli {

// Full command-line entry point, reusable in-process by tests.
// Exit codes: 0 success, 1 validation failure (bad/empty data), 2 usage or
// configuration error.
int run(int argc, const char* const* argv);

}  // namespace treecot::cli
