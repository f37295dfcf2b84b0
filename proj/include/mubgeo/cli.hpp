#pragma once

#include <iosfwd>

namespace mubgeo {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitBadArgs = 2, kExitIo = 3 };

/// Entry point of the mubgeo tool. Reports go to files (--out, or the
/// directory in MUBGEO_OUT_DIR) or to out; diagnostics go to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mubgeo
