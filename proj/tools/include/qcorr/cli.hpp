#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcorr/qstate.hpp"

namespace qcorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the qcorr tool. Data goes to `out`, diagnostics and the
/// resolved configuration to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Bad flags or flag values; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reads one `re im` pair per line; blank lines and lines starting with '#'
/// are skipped. Without `normalize`, a squared norm off by more than
/// kNormTolerance is an error that reports the deficit.
PureState read_amplitudes(std::istream& in, bool normalize);
PureState read_amplitude_file(const std::string& path, bool normalize);

}  // namespace qcorr::cli
