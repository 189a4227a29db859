#pragma once

namespace nsv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nsv
