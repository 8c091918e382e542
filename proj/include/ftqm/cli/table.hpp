#pragma once

#include "ftqm/cli/config.hpp"

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace ftqm::cli {

/// Rectangular table of finite numbers.
class ResultTable {
public:
    ResultTable(std::vector<std::string> columns, std::string provenance);

    /// Throws InvalidInput for a width mismatch or a non-finite cell.
    void add_row(std::vector<double> row);
    void add_row(std::initializer_list<double> row) { add_row(std::vector<double>(row)); }

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    const std::string& provenance() const { return provenance_; }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::string provenance_;
};

/// Shortest round-trip decimal form, locale independent; -0 prints as 0.
std::string format_number(double value);

std::string to_csv(const ResultTable& table);
std::string to_report(const ResultTable& table, const std::string& title);

/// Writes <stem>.csv or <stem>.txt into `directory` (created if missing) and
/// returns the path. Throws IoError naming the path on failure.
std::filesystem::path emit(const ResultTable& table, const std::filesystem::path& directory,
                           const std::string& stem, OutputFormat format);

/// Writes `text` to a file, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace ftqm::cli
