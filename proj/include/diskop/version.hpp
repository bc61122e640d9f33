#pragma once

namespace diskop {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace diskop
