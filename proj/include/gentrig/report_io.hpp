// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "gentrig/convexity.hpp"

namespace gentrig {

/// Lossless text form of a double: 17 significant digits round-trip binary64.
std::string format_double(double v);

/// CSV schema: header `property,kind,p,y,margin,err_bound,verdict`, one row
/// per cell in p-major order, 17-significant-digit floats, LF line endings.
std::string to_csv(const ScanReport& report);

/// Rebuild a ScanReport from its CSV form.  Grids and margins round-trip
/// bit-exactly; the config snapshot is not part of the CSV schema and comes
/// back default-constructed.
ScanReport parse_scan_csv(const std::string& text);

/// JSON mirror of ScanReport with a schema_version field and the full
/// config snapshot.
std::string to_json(const ScanReport& report);

/// Write content to path atomically (temp file in the same directory, then
/// rename).  Throws std::runtime_error on I/O failure.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace gentrig
