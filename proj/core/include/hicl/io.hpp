#pragma once

#include <filesystem>
#include <string>

namespace hicl {

// Reads a whole text file; files ending in .gz (or starting with the gzip
// magic bytes) are decompressed transparently.
std::string read_text_file(const std::filesystem::path& path);

// Writes content, creating parent directories as needed.
void write_text_file(const std::filesystem::path& path, const std::string& content);

// Shortest round-trip-exact decimal form ("%.17g").
std::string format_g17(double v);

}  // namespace hicl
