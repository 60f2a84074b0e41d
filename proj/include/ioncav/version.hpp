#pragma once

namespace ioncav {

inline constexpr const char* version_string = "ioncav 0.1.0";

}  // namespace ioncav
