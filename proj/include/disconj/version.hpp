#ifndef DISCONJ_VERSION_HPP
#define DISCONJ_VERSION_HPP

namespace disconj {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "dk/1";

}  // namespace disconj

#endif
