#ifndef VORTWAVE_VERSION_HPP
#define VORTWAVE_VERSION_HPP

namespace vortwave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vortwave

#endif  // VORTWAVE_VERSION_HPP
