// fanstalk: tool version and report schema constants.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_VERSION_HPP
#define FANSTALK_VERSION_HPP

namespace fanstalk {

inline constexpr const char* kToolName = "fanstalk";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

} // namespace fanstalk

#endif // FANSTALK_VERSION_HPP
