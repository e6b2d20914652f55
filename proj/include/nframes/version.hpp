#pragma once

namespace nframes {

inline constexpr const char* kVersion = "0.1.0";

} // namespace nframes
