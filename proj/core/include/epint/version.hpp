#pragma once

namespace epint {

// Keep in sync with the project() version in the top-level CMakeLists.txt.
inline constexpr const char* version_string = "0.1.0";

}  // namespace epint
