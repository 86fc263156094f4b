#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace aggmet {

// All numeric report output goes through this: C locale, 6 significant
// digits, integers without a decimal point. NaN renders as an empty cell.
std::string format_number(double v);

std::string csv_escape(const std::string& field);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_text_file(const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);

}  // namespace aggmet
