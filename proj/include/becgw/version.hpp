#pragma once

namespace becgw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace becgw
