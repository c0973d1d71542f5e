#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hotrank/engine.hpp"
#include "hotrank/metrics.hpp"
#include "hotrank/rank.hpp"
#include "hotrank/stream.hpp"
#include "hotrank/types.hpp"

namespace hotrank {

inline constexpr std::string_view kQueryCsvHeader =
    "query_index,strategy,elapsed_total_ms,elapsed_apply_ms,elapsed_summary_ms,"
    "elapsed_compute_ms,hot_count,summary_edges,total_edges,rbo,speedup,edge_fraction";

inline constexpr std::string_view kEvaluationCsvHeader =
    "query_index,depth,rbo,speedup,edge_fraction";

/// One line of the per-query CSV. rbo and speedup are empty without a baseline.
struct ReportRow {
    QueryRecord record;
    std::optional<double> rbo;
    std::optional<double> speedup;
    double edge_fraction = 0.0;
};

namespace detail {

inline std::string format_double(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Milliseconds with six decimals is an exact nanosecond count.
inline std::string format_ms(Duration d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(d.count()) / 1e6);
    return buf;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

inline double parse_double(std::string_view s, std::size_t line) {
    try {
        std::size_t used = 0;
        const std::string str(s);
        const double v = std::stod(str, &used);
        if (used != str.size()) {
            throw ParseError(line, "invalid number '" + str + "'");
        }
        return v;
    } catch (const std::logic_error&) {
        throw ParseError(line, "invalid number '" + std::string(s) + "'");
    }
}

inline std::size_t parse_count(std::string_view s, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, "invalid count '" + std::string(s) + "'");
    }
    return v;
}

inline Duration parse_ms(std::string_view s, std::size_t line) {
    return Duration(static_cast<Duration::rep>(std::llround(parse_double(s, line) * 1e6)));
}

inline std::optional<double> parse_optional(std::string_view s, std::size_t line) {
    if (s.empty()) {
        return std::nullopt;
    }
    return parse_double(s, line);
}

} // namespace detail

inline void write_query_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << kQueryCsvHeader << '\n';
    for (const auto& row : rows) {
        const auto& r = row.record;
        out << r.query_index << ',' << to_string(r.strategy) << ','
            << detail::format_ms(r.elapsed_total) << ',' << detail::format_ms(r.elapsed_apply) << ','
            << detail::format_ms(r.elapsed_summary) << ','
            << detail::format_ms(r.elapsed_compute) << ',' << r.hot_count << ','
            << r.summary_edges << ',' << r.total_edges << ','
            << (row.rbo ? detail::format_double(*row.rbo) : "") << ','
            << (row.speedup ? detail::format_double(*row.speedup) : "") << ','
            << detail::format_double(row.edge_fraction) << '\n';
    }
}

/// total_vertices and applied-update counts are not part of the CSV and read back as zero.
inline std::vector<ReportRow> read_query_csv(std::istream& in) {
    std::vector<ReportRow> rows;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line) || detail::trim(line) != kQueryCsvHeader) {
        throw ParseError(1, "missing or unexpected query CSV header");
    }
    ++lineno;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty()) {
            continue;
        }
        const auto c = detail::split_csv(body);
        if (c.size() != 12) {
            throw ParseError(lineno, "expected 12 columns, got " + std::to_string(c.size()));
        }
        ReportRow row;
        auto& r = row.record;
        r.query_index = detail::parse_count(c[0], lineno);
        const auto strategy = strategy_from_string(c[1]);
        if (!strategy) {
            throw ParseError(lineno, "unknown strategy '" + std::string(c[1]) + "'");
        }
        r.strategy = *strategy;
        r.elapsed_total = detail::parse_ms(c[2], lineno);
        r.elapsed_apply = detail::parse_ms(c[3], lineno);
        r.elapsed_summary = detail::parse_ms(c[4], lineno);
        r.elapsed_compute = detail::parse_ms(c[5], lineno);
        r.hot_count = detail::parse_count(c[6], lineno);
        r.summary_edges = detail::parse_count(c[7], lineno);
        r.total_edges = detail::parse_count(c[8], lineno);
        row.rbo = detail::parse_optional(c[9], lineno);
        row.speedup = detail::parse_optional(c[10], lineno);
        row.edge_fraction = detail::parse_double(c[11], lineno);
        rows.push_back(row);
    }
    return rows;
}

inline void write_evaluation_csv(std::ostream& out, const std::vector<EvaluationRow>& rows) {
    out << kEvaluationCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.query_index << ',' << r.depth << ',' << detail::format_double(r.rbo) << ','
            << detail::format_double(r.speedup) << ',' << detail::format_double(r.edge_fraction)
            << '\n';
    }
}

/// "vertex score" lines sorted by vertex id, scores to 12 significant digits.
inline void write_rank_file(std::ostream& out, const RankVector& rv) {
    std::vector<std::size_t> order(rv.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rv.ids[a] < rv.ids[b]; });
    for (std::size_t i : order) {
        out << rv.ids[i] << ' ' << detail::format_double(rv.scores[i], 12) << '\n';
    }
}

inline RankVector read_rank_file(std::istream& in) {
    RankVector rv;
    std::unordered_set<VertexId> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const auto tok = detail::split_ws(body);
        if (tok.size() != 2) {
            throw ParseError(lineno, "expected 'vertex score', got '" + std::string(body) + "'");
        }
        const VertexId id = detail::parse_vertex(tok[0], lineno);
        if (!seen.insert(id).second) {
            throw IntegrityError("line " + std::to_string(lineno) + ": duplicate vertex " +
                                 std::to_string(id));
        }
        rv.ids.push_back(id);
        rv.scores.push_back(detail::parse_double(tok[1], lineno));
    }
    return rv;
}

} // namespace hotrank
