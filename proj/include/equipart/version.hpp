#pragma once

namespace equipart {

inline constexpr const char* kToolName = "equipart";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr unsigned long long kDefaultSeed = 7;

}  // namespace equipart
