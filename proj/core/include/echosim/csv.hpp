#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace echosim {

// Shortest round-trip decimal form (via to_chars): parse_double(format_double(x))
// returns exactly x, and re-formatting a formatted value is byte-stable. All
// numeric output of the experiment runners goes through these, which is what
// makes rerun outputs byte-identical.
std::string format_double(double value);
std::string format_int(std::int64_t value);
double parse_double(const std::string& text);   // throws ConfigError on junk
std::int64_t parse_int(const std::string& text);  // throws ConfigError on junk

// Minimal CSV: comma-separated cells, newline-terminated rows, no quoting
// (no producer here ever emits a comma inside a cell).
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  void row(const std::vector<std::string>& cells);
  void close();  // throws ConfigError on write failure

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace echosim
