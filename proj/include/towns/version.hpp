#pragma once

namespace towns {

inline constexpr const char* kToolName = "towns";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace towns
