#pragma once

#include <string>
#include <string_view>

namespace skillguard {

std::string read_file(const std::string& path);

/// Writes to "<path>.tmp.<pid>" and renames over `path`, so readers never see
/// a partial file.
void write_file_atomic(const std::string& path, std::string_view contents);

/// One log line on standard error.
void log_line(std::string_view level, std::string_view message);

}  // namespace skillguard
