#pragma once

namespace moldgate {

inline constexpr const char* kVersion = "1.0.0";

} // namespace moldgate
