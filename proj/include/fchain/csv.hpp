#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fchain {

/// Deterministic CSV emitter: fixed "%.12g" formatting, one header line
/// naming columns and units, gnuplot-friendly '#' prefix.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(std::span<const double> values);
    void row(std::initializer_list<double> values) { row(std::span<const double>(values)); }

private:
    std::FILE* f_ = nullptr;
};

std::string format_number(double v);

}  // namespace fchain
