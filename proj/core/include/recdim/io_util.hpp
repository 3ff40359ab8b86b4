#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace recdim {

/// Shortest round-trip decimal form; the one float format used in every
/// output file so identical values serialize identically.
std::string format_double(double v);

std::string fnv64_hex(std::string_view data);
std::string now_utc_iso8601();

void write_file(const std::string& path, std::string_view data);
std::string read_file(const std::string& path);
void ensure_dir(const std::string& path);

}  // namespace recdim
