#pragma once

namespace slabuq {

inline constexpr const char* kVersion = "0.1.0";

} // namespace slabuq
