#include "fchain/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace fchain {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& header) {
    std::filesystem::create_directories(path.parent_path());
    f_ = std::fopen(path.string().c_str(), "wb");
    if (!f_) throw std::runtime_error("cannot open " + path.string());
    std::fprintf(f_, "# %s\n", header.c_str());
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(f_, i ? ",%s" : "%s", format_number(values[i]).c_str());
    std::fputc('\n', f_);
}

}  // namespace fchain
