#include "becgw/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace becgw {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::string format_full_precision(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string render_csv(const CsvDocument& doc, bool include_metadata) {
    for (const auto& row : doc.rows) {
        if (row.size() != doc.header.size()) {
            throw DomainError("emit_csv: rows must match the header width");
        }
    }
    std::ostringstream os;
    if (include_metadata) {
        for (const auto& m : doc.metadata) os << "# " << m << "\n";
    }
    for (std::size_t i = 0; i < doc.header.size(); ++i) {
        if (i) os << ",";
        os << doc.header[i];
    }
    os << "\n";
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << format_full_precision(row[i]);
        }
        os << "\n";
    }
    return os.str();
}

void emit_csv(const CsvDocument& doc, const std::string& path, bool include_metadata) {
    const std::string body = render_csv(doc, include_metadata);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_csv: cannot open for writing: " + path);
    out << body;
    if (!out) throw IoError("emit_csv: write failed: " + path);
}

CsvDocument parse_csv_text(const std::string& text) {
    CsvDocument doc;
    std::istringstream is(text);
    std::string line;
    bool have_header = false;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::string m = t.substr(1);
            if (!m.empty() && m[0] == ' ') m = m.substr(1);
            doc.metadata.push_back(m);
            continue;
        }
        if (!have_header) {
            for (const auto& cell : split_commas(t)) doc.header.push_back(trim(cell));
            have_header = true;
            continue;
        }
        std::vector<double> row;
        for (const auto& cell : split_commas(t)) {
            const std::string c = trim(cell);
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0') {
                throw DomainError("parse_csv: non-numeric cell '" + c + "' at line " +
                                  std::to_string(lineno));
            }
            row.push_back(v);
        }
        if (row.size() != doc.header.size()) {
            throw DomainError("parse_csv: row width mismatch at line " + std::to_string(lineno));
        }
        doc.rows.push_back(std::move(row));
    }
    if (!have_header) throw DomainError("parse_csv: missing header row");
    return doc;
}

CsvDocument parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("parse_csv: cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv_text(buf.str());
}

double ComparisonCurve::interpolate(double f) const {
    if (rows.empty() || f < rows.front().first || f > rows.back().first) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (f <= rows[i].first) {
            const double f0 = rows[i - 1].first, v0 = rows[i - 1].second;
            const double f1 = rows[i].first, v1 = rows[i].second;
            if (f1 == f0) return v0;
            const double t = (std::log(f) - std::log(f0)) / (std::log(f1) - std::log(f0));
            return std::exp(std::log(v0) + t * (std::log(v1) - std::log(v0)));
        }
    }
    return rows.back().second;
}

ComparisonCurve load_comparison_curve(const std::string& path) {
    const CsvDocument doc = parse_csv(path);
    if (doc.header.size() < 2) {
        throw DomainError("load_comparison_curve: expected two columns (f, value)");
    }
    ComparisonCurve curve;
    curve.label = path;
    for (const auto& m : doc.metadata) {
        const auto pos = m.find("label");
        if (pos == 0) {
            const auto eq = m.find('=');
            if (eq != std::string::npos) curve.label = trim(m.substr(eq + 1));
        }
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& row : doc.rows) {
        if (!(row[0] > prev)) {
            throw DomainError("load_comparison_curve: frequencies must be strictly ascending");
        }
        if (!(row[1] > 0.0)) {
            throw DomainError("load_comparison_curve: curve values must be positive");
        }
        prev = row[0];
        curve.rows.emplace_back(row[0], row[1]);
    }
    return curve;
}

}  // namespace becgw
