#include "homexp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace homexp {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

std::string format_exact(const Rational& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

std::string format_bool(bool value) { return value ? "true" : "false"; }

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Report::Report(const RunConfig& config) : csv_(config.format == "csv") {
    header_.emplace_back("homexp", kVersion);
    header_.emplace_back("mode", config.exact ? "exact" : "float");
    header_.emplace_back("seed", std::to_string(config.seed));
}

void Report::note(const std::string& key, const std::string& value) {
    header_.emplace_back(key, value);
}

void Report::scalar(const std::string& name, const std::string& value) {
    body_.push_back({LineKind::Scalar, {name, value}});
}

void Report::table(const std::vector<std::string>& columns) {
    body_.push_back({LineKind::TableHeader, columns});
}

void Report::row(const std::vector<std::string>& cells) {
    body_.push_back({LineKind::Row, cells});
}

void Report::raw(const std::string& line) {
    body_.push_back({LineKind::Raw, {line}});
}

void Report::write(std::ostream& out) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        // The first line reads "# homexp <version>"; the rest "# key: value".
        out << "# " << header_[i].first << (i == 0 ? " " : ": ")
            << header_[i].second << "\n";
    }
    for (const Line& line : body_) {
        switch (line.kind) {
            case LineKind::Scalar:
                if (csv_)
                    out << csv_quote(line.cells[0]) << ","
                        << csv_quote(line.cells[1]);
                else
                    out << line.cells[0] << " = " << line.cells[1];
                break;
            case LineKind::TableHeader:
            case LineKind::Row:
                for (std::size_t i = 0; i < line.cells.size(); ++i) {
                    if (i) out << (csv_ ? "," : " ");
                    out << (csv_ ? csv_quote(line.cells[i]) : line.cells[i]);
                }
                break;
            case LineKind::Raw:
                out << line.cells[0];
                break;
        }
        out << "\n";
    }
}

std::string Report::str() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

}  // namespace homexp
