#pragma once

#include <iosfwd>

namespace vswt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the `vswt` tool. 0 on success, 2 on usage or config errors,
/// 3 on numeric or I/O failures. Output files are written only on success.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vswt::cli
