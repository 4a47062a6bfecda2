#pragma once

namespace tfc {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace tfc
