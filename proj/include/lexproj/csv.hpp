#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace lexproj::csv {

struct Row {
    std::vector<std::string> fields;
    long line = 0;  // 1-based line number in the source file
};

// Reads a CSV file with a mandatory header. Returns data rows only and
// checks the header matches `expectedHeader` exactly. Fields may be quoted
// with '"' and contain embedded commas or doubled quotes.
std::vector<Row> readFile(const std::filesystem::path& path,
                          const std::vector<std::string>& expectedHeader);

void writeRow(std::ostream& os, const std::vector<std::string>& fields);

// Shortest round-trip decimal representation of a double.
std::string formatDouble(double v);

double parseDouble(const std::string& s, const std::string& context);
long parseLong(const std::string& s, const std::string& context);

}  // namespace lexproj::csv
