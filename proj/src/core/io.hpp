#ifndef FBS_IO_HPP
#define FBS_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fbs {

// Format a double with 12 significant digits, the precision used by all
// CSV output.
std::string format_value(double x);

// Write content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

// FNV-1a 64-bit content hash, recorded in run manifests.
std::uint64_t fnv1a64(const std::string& data);

struct CsvWriter {
    std::string buffer;
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<std::string>& cells);
};

}  // namespace fbs

#endif
