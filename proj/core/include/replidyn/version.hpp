#pragma once

namespace replidyn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace replidyn
