#pragma once

namespace defconn {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "defconn";

}  // namespace defconn
