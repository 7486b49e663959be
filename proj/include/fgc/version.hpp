#pragma once

namespace fgc {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "fgc.report.v1";
inline constexpr const char* kCertificateSchema = "fgc.certificate.v1";

}  // namespace fgc
