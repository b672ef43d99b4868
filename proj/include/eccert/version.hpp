#pragma once

namespace eccert {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace eccert
