#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tfp {

/// Rectangular numeric table with named columns. Values are written in
/// scientific notation with 17 significant digits.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::size_t rows() const noexcept { return rows_.size(); }
    const std::vector<double>& row(std::size_t i) const { return rows_.at(i); }

    void add_row(std::vector<double> row);

    std::string to_string() const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

/// Scientific notation with 17 significant digits.
std::string format_number(double v);

}  // namespace tfp
