#ifndef QRNET_VERSION_HPP_
#define QRNET_VERSION_HPP_

namespace qrnet {

inline constexpr const char *kVersion = "1.0.0";

// Version of the report.json layout. `qrnet compare` refuses to mix reports
// written under different schema versions.
inline constexpr int kSchemaVersion = 1;

} // namespace qrnet

#endif // QRNET_VERSION_HPP_
