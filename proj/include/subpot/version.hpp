#pragma once

namespace subpot {

inline constexpr const char* kToolName = "subpot";
inline constexpr const char* kVersion = "0.1.0";

} // namespace subpot
