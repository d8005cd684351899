#ifndef OCFSIM_CSV_HPP
#define OCFSIM_CSV_HPP

#include <string>
#include <vector>

namespace ocfsim {

/// Shortest round-trip decimal form (std::to_chars). Reparsing and
/// reformatting a value reproduces the same bytes, which is what makes the
/// emitted CSV files byte-stable across reruns.
std::string format_double(double v);
double parse_double(const std::string& s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string serialize() const;
};

/// Parses a simple unquoted CSV (the only dialect this project emits).
CsvTable parse_csv(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace ocfsim

#endif // OCFSIM_CSV_HPP
