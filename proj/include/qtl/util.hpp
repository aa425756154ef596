#ifndef QTL_UTIL_HPP
#define QTL_UTIL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qtl::util {

uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);
std::string read_file(const std::string& path);  // throws std::runtime_error

// Data directory resolution: explicit argument, then $QTL_DATA, then the
// compiled-in source location.
std::string data_dir(const std::string& override_path = "");

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);

}  // namespace qtl::util

#endif
