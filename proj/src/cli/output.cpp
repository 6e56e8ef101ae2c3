#include "hjwave/cli/output.hpp"

#include <cmath>
#include <cstdio>

#include "hjwave/error.hpp"

namespace hjwave::cli {

std::string format_number(double v)
{
    if (!std::isfinite(v)) throw NumericalError("refusing to write a non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string format_integral(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(v)));
    return buf;
}

std::string render_cell(const Table& t, std::size_t col, double v)
{
    return (!t.integral.empty() && t.integral[col]) ? format_integral(v) : format_number(v);
}

} // namespace

void Table::add(std::vector<double> row)
{
    if (row.size() != columns.size()) throw Error("table row width does not match the header");
    rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const
{
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << render_cell(*this, c, row[c]);
        out << '\n';
    }
}

std::string json_quote(const std::string& s)
{
    std::string out = "\"";
    for (const char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out + "\"";
}

void FlatJson::number(const std::string& key, double v) { fields_.emplace_back(key, format_number(v)); }

void FlatJson::integer(const std::string& key, std::int64_t v) { fields_.emplace_back(key, std::to_string(v)); }

void FlatJson::text(const std::string& key, const std::string& v) { fields_.emplace_back(key, json_quote(v)); }

void FlatJson::numbers(const std::string& key, const std::vector<double>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    fields_.emplace_back(key, s + "]");
}

void FlatJson::counts(const std::string& key, const std::vector<std::pair<std::string, std::uint64_t>>& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + json_quote(v[i].first) + ":" + std::to_string(v[i].second);
    fields_.emplace_back(key, s + "}");
}

void FlatJson::table(const Table& t)
{
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        std::string s = "[";
        for (std::size_t r = 0; r < t.rows.size(); ++r) s += (r ? "," : "") + render_cell(t, c, t.rows[r][c]);
        fields_.emplace_back(t.columns[c], s + "]");
    }
}

void FlatJson::write(std::ostream& out) const
{
    out << "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i)
        out << "  " << json_quote(fields_[i].first) << ": " << fields_[i].second
            << (i + 1 < fields_.size() ? ",\n" : "\n");
    out << "}\n";
}

} // namespace hjwave::cli
