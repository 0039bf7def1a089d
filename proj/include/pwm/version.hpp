#pragma once

namespace pwm {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace pwm
