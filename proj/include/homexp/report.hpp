#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "homexp/config.hpp"
#include "homexp/numeric.hpp"

namespace homexp {

inline constexpr const char kVersion[] = "0.1.0";

// Fixed 12-significant-digit rendering; infinities print as "inf"/"-inf".
// Reports must be byte-identical across runs, so every floating value goes
// through this one formatter.
std::string format_double(double value);

// Exact rendering: integers as "n", proper fractions as "p/q".
std::string format_exact(const Rational& value);

std::string format_bool(bool value);

// RFC-4180-style quoting: fields containing a comma, quote, or newline are
// wrapped in double quotes with embedded quotes doubled.
std::string csv_quote(const std::string& field);

// Deterministic report writer.  A report is a header of '#' comment lines
// (version, numeric mode, seed, plus any estimator notes) followed by a
// body of scalar lines and/or one table.  No timestamps or other
// run-varying data may be added, so identical inputs produce identical
// bytes.
class Report {
public:
    explicit Report(const RunConfig& config);

    // Appends a "# key: value" header line.
    void note(const std::string& key, const std::string& value);

    // Body content, emitted in insertion order.
    void scalar(const std::string& name, const std::string& value);
    void table(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void raw(const std::string& line);

    void write(std::ostream& out) const;
    std::string str() const;

private:
    enum class LineKind { Scalar, TableHeader, Row, Raw };
    struct Line {
        LineKind kind;
        std::vector<std::string> cells;
    };

    bool csv_ = false;
    std::vector<std::pair<std::string, std::string>> header_;
    std::vector<Line> body_;
};

}  // namespace homexp
