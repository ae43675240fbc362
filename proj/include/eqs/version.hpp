#ifndef EQS_VERSION_HPP
#define EQS_VERSION_HPP

namespace eqs {

inline constexpr const char* kVersion = "0.1.0";

} // namespace eqs

#endif
