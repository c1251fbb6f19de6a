#pragma once

namespace vlcn {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace vlcn
