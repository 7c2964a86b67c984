#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace kp2stab {

// Deterministic CSV: '#' header line, column names, 17 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header, const std::vector<std::string>& columns);
    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    CsvWriter& cell(const std::string& v);
    void end_row();

private:
    void sep();
    std::ofstream out_;
    std::filesystem::path path_;
    bool first_ = true;
};

std::string format_double(double v);

}  // namespace kp2stab
