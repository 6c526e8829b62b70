#pragma once

namespace tsbench {

inline constexpr const char* kVersion = "0.1.0";

} // namespace tsbench
