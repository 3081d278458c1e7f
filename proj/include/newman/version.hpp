#pragma once

namespace newman {

inline constexpr const char* kVersion = "newman 0.1.0";

}  // namespace newman
