#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace echelon::ioutil {

// Whole-file read/write; throws IoError. write_file creates parent
// directories as needed and always uses '\n' line endings as given.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string trim(const std::string& s);
std::vector<std::string> split_lines(const std::string& text);

// CSV here means plain comma separation with no quoting; none of the fields
// we emit may contain commas. '#'-prefixed lines and blank lines are
// comments and get skipped.
std::vector<std::string> split_csv(const std::string& line);
std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               const std::string& expected_header);

double parse_double(const std::string& s, const std::string& what);
long parse_long(const std::string& s, const std::string& what);

// Shortest round-trip style formatting for doubles ("%.17g" is exact but
// noisy; we keep it for files that must reload bit-identically).
std::string fmt_exact(double v);
std::string fmt_fixed(double v, int places);

// FNV-1a 64-bit over a byte string; used for config hashes and dataset
// fingerprints.
std::uint64_t fnv1a(const std::string& bytes);
std::string hex16(std::uint64_t v);

}  // namespace echelon::ioutil
