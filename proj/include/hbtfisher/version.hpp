#pragma once

namespace hbtfisher {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hbtfisher
