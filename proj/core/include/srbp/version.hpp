#ifndef SRBP_VERSION_HPP
#define SRBP_VERSION_HPP

namespace srbp {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
