#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equipart {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitRefusal = 2;
inline constexpr int kExitUsage = 64;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// min(requested, EQUIPART_THREADS) when the variable is set, else requested (>= 1).
unsigned effective_threads(unsigned requested);

}  // namespace equipart
