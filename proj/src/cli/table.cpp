#include "ftqm/cli/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace ftqm::cli {

ResultTable::ResultTable(std::vector<std::string> columns, std::string provenance)
    : columns_(std::move(columns)), provenance_(std::move(provenance))
{
}

void ResultTable::add_row(std::vector<double> row)
{
    if (row.size() != columns_.size()) {
        throw InvalidInput("row has " + std::to_string(row.size()) + " cells for " +
                           std::to_string(columns_.size()) + " columns");
    }
    for (double v : row) {
        if (!std::isfinite(v)) {
            throw InvalidInput("result tables hold finite numbers only");
        }
    }
    rows_.push_back(std::move(row));
}

std::string format_number(double value)
{
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

std::string to_csv(const ResultTable& table)
{
    std::string out;
    for (std::size_t c = 0; c < table.columns().size(); ++c) {
        if (c > 0) {
            out += ',';
        }
        out += table.columns()[c];
    }
    out += '\n';
    for (const auto& row : table.rows()) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out += ',';
            }
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_report(const ResultTable& table, const std::string& title)
{
    const std::size_t ncol = table.columns().size();
    std::vector<std::vector<std::string>> cells;
    cells.reserve(table.rows().size());
    std::vector<std::size_t> width(ncol);
    for (std::size_t c = 0; c < ncol; ++c) {
        width[c] = table.columns()[c].size();
    }
    for (const auto& row : table.rows()) {
        std::vector<std::string> text(ncol);
        for (std::size_t c = 0; c < ncol; ++c) {
            text[c] = format_number(row[c]);
            width[c] = std::max(width[c], text[c].size());
        }
        cells.push_back(std::move(text));
    }

    std::string out = "# " + title + "\n";
    std::size_t start = 0;
    const std::string& prov = table.provenance();
    while (start < prov.size()) {
        const std::size_t end = std::min(prov.find('\n', start), prov.size());
        out += "# " + prov.substr(start, end - start) + "\n";
        start = end + 1;
    }
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t c = 0; c < ncol; ++c) {
            if (c > 0) {
                out += "  ";
            }
            out += std::string(width[c] - fields[c].size(), ' ') + fields[c];
        }
        out += '\n';
    };
    line(table.columns());
    for (const auto& row : cells) {
        line(row);
    }
    out += "# rows: " + std::to_string(table.rows().size()) + "\n";
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    file.close();
    if (!file) {
        throw IoError("failed writing " + path.string());
    }
}

std::filesystem::path emit(const ResultTable& table, const std::filesystem::path& directory,
                           const std::string& stem, OutputFormat format)
{
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec || !std::filesystem::is_directory(directory)) {
        throw IoError("cannot create output directory " + directory.string() +
                      (ec ? ": " + ec.message() : std::string()));
    }
    if (format == OutputFormat::csv) {
        const auto path = directory / (stem + ".csv");
        write_text(path, to_csv(table));
        return path;
    }
    const auto path = directory / (stem + ".txt");
    write_text(path, to_report(table, stem));
    return path;
}

} // namespace ftqm::cli
