#include "lexproj/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lexproj/errors.hpp"

namespace lexproj::csv {

namespace {

std::vector<std::string> splitLine(const std::string& line, const std::string& where) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw ParseError(where + ": unterminated quote");
    out.push_back(std::move(field));
    return out;
}

}  // namespace

std::vector<Row> readFile(const std::filesystem::path& path,
                          const std::vector<std::string>& expectedHeader) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());

    std::vector<Row> rows;
    std::string line;
    long lineNo = 0;
    bool sawHeader = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string where = path.string() + ":" + std::to_string(lineNo);
        auto fields = splitLine(line, where);
        if (!sawHeader) {
            if (fields != expectedHeader) {
                std::ostringstream want;
                for (size_t i = 0; i < expectedHeader.size(); ++i)
                    want << (i ? "," : "") << expectedHeader[i];
                throw ParseError(where + ": expected header '" + want.str() + "', got '" + line + "'");
            }
            sawHeader = true;
            continue;
        }
        if (fields.size() != expectedHeader.size()) {
            throw ParseError(where + ": expected " + std::to_string(expectedHeader.size()) +
                             " fields, got " + std::to_string(fields.size()));
        }
        rows.push_back(Row{std::move(fields), lineNo});
    }
    if (!sawHeader) throw ParseError(path.string() + ": empty file (missing header)");
    return rows;
}

void writeRow(std::ostream& os, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            os << '"';
            for (char c : f) {
                if (c == '"') os << '"';
                os << c;
            }
            os << '"';
        } else {
            os << f;
        }
    }
    os << '\n';
}

std::string formatDouble(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parseDouble(const std::string& s, const std::string& context) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError(context + ": cannot parse number '" + s + "'");
    }
    return v;
}

long parseLong(const std::string& s, const std::string& context) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError(context + ": cannot parse integer '" + s + "'");
    }
    return v;
}

}  // namespace lexproj::csv
