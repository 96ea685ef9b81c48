#pragma once

namespace anisospec {

inline constexpr const char* toolkit_version = "1.0.0";

} // namespace anisospec
