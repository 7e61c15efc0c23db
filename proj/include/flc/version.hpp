#ifndef FLC_VERSION_HPP
#define FLC_VERSION_HPP

namespace flc {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
