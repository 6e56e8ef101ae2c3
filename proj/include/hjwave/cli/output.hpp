#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hjwave::cli {

/// %.17g rendering (integral columns render without exponent or fraction).
std::string format_number(double v);

/// Rectangular numeric table with named columns.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<bool> integral; // per column; empty means all floating

    void add(std::vector<double> row);
    void write_csv(std::ostream& out) const;
};

/// Flat JSON object with keys in insertion order.
class FlatJson {
public:
    void number(const std::string& key, double v);
    void integer(const std::string& key, std::int64_t v);
    void text(const std::string& key, const std::string& v);
    void numbers(const std::string& key, const std::vector<double>& v);
    /// Object of string keys to integer counts.
    void counts(const std::string& key, const std::vector<std::pair<std::string, std::uint64_t>>& v);
    void table(const Table& t); // one array per column

    void write(std::ostream& out) const;

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_quote(const std::string& s);

} // namespace hjwave::cli
