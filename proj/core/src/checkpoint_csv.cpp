#include "artin/checkpoint_csv.hpp"

#include "artin/errors.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace artin::est {

namespace {

std::uint64_t parse_u64(std::string_view field, std::size_t line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ConfigError("checkpoint csv line " + std::to_string(line) + ": bad integer '" + std::string(field) + "'");
    return v;
}

Extended parse_value(std::string_view field, std::size_t line) {
    try {
        return Extended(std::string(field));
    } catch (const std::exception&) {
        throw ConfigError("checkpoint csv line " + std::to_string(line) + ": bad value '" + std::string(field) + "'");
    }
}

} // namespace

std::string format_value(const Extended& x) {
    return x.str(18, std::ios_base::fmtflags(0));
}

std::string format_row(const CheckpointRow& row) {
    std::string out = std::to_string(row.n_total);
    out += ',';
    out += std::to_string(row.n_used);
    out += ',';
    out += std::to_string(row.p_n);
    out += ',';
    out += format_value(row.estimate);
    out += ',';
    out += format_value(row.target);
    out += ',';
    out += format_value(row.deviation());
    return out;
}

void write_checkpoint_csv(std::ostream& os, const CheckpointSeries& series) {
    os << checkpoint_csv_header << '\n';
    for (const auto& row : series) os << format_row(row) << '\n';
}

CheckpointSeries read_checkpoint_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != checkpoint_csv_header)
        throw ConfigError("checkpoint csv: missing or unexpected header");
    CheckpointSeries series;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1))
            fields.push_back(rest.substr(0, pos));
        fields.push_back(rest);
        if (fields.size() != 6)
            throw ConfigError("checkpoint csv line " + std::to_string(line_no) + ": expected 6 fields");

        CheckpointRow row;
        row.n_total = parse_u64(fields[0], line_no);
        row.n_used = parse_u64(fields[1], line_no);
        row.p_n = parse_u64(fields[2], line_no);
        row.estimate = parse_value(fields[3], line_no);
        row.target = parse_value(fields[4], line_no);
        const Extended deviation = parse_value(fields[5], line_no);
        // The printed deviation was taken from unrounded fields; re-deriving it
        // from the 18-digit columns may differ in the last places only.
        if (abs(deviation - row.deviation()) > Extended("1e-15"))
            throw ConfigError("checkpoint csv line " + std::to_string(line_no) + ": deviation inconsistent with estimate/target");
        if (!series.empty() && row.n_total <= series.back().n_total)
            throw ConfigError("checkpoint csv line " + std::to_string(line_no) + ": N_total not increasing");
        series.push_back(row);
    }
    return series;
}

} // namespace artin::est
