#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hotrank/graph.hpp"
#include "hotrank/types.hpp"

namespace hotrank {

enum class EventKind { Add, Remove, Query };

struct StreamEvent {
    EventKind kind = EventKind::Query;
    Edge edge{}; // meaningful only for Add / Remove

    static StreamEvent add(VertexId u, VertexId v) { return {EventKind::Add, {u, v}}; }
    static StreamEvent remove(VertexId u, VertexId v) { return {EventKind::Remove, {u, v}}; }
    static StreamEvent query() { return {}; }

    friend bool operator==(const StreamEvent& a, const StreamEvent& b) {
        return a.kind == b.kind && (a.kind == EventKind::Query || a.edge == b.edge);
    }
};

struct StreamSpec {
    std::size_t chunk_size = 800;
    double removal_fraction = 0.2;
    std::size_t query_count = 50;
    bool shuffle = false;
    std::uint64_t rng_seed = 42;

    /// Removals per chunk: floor(removal_fraction * chunk_size).
    std::size_t removals_per_chunk() const {
        // The epsilon keeps products such as 0.29 * 100 from flooring to 28.
        return static_cast<std::size_t>(
            std::floor(removal_fraction * static_cast<double>(chunk_size) + 1e-9));
    }

    std::size_t withheld() const { return chunk_size * query_count; }
};

struct GeneratedStream {
    DynamicGraph initial;
    std::vector<StreamEvent> events;
};

/// Uniform integers in [0, bound) from mt19937_64 by rejection sampling, so the
/// sequence depends only on the seed and not on the standard library.
class StreamRng {
public:
    explicit StreamRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\v\f";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            ++i;
        }
        if (i > start) {
            tokens.push_back(s.substr(start, i - start));
        }
    }
    return tokens;
}

inline VertexId parse_vertex(std::string_view token, std::size_t line) {
    if (!token.empty() && token.front() == '-') {
        throw ParseError(line, "negative vertex id '" + std::string(token) + "'");
    }
    VertexId id = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "invalid vertex id '" + std::string(token) + "'");
    }
    return id;
}

} // namespace detail

/// Edge list: "u v" per line; '#' and '%' start comment lines; blank lines are skipped.
inline DynamicGraph parse_edge_list(std::istream& in) {
    DynamicGraph g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#' || body.front() == '%') {
            continue;
        }
        const auto tok = detail::split_ws(body);
        if (tok.size() != 2) {
            throw ParseError(lineno, "expected two vertex ids, got '" + std::string(body) + "'");
        }
        g.add_edge(detail::parse_vertex(tok[0], lineno), detail::parse_vertex(tok[1], lineno));
    }
    if (in.bad()) {
        throw Error("read error after line " + std::to_string(lineno));
    }
    return g;
}

/// Writes edges in ascending (source, target) order.
inline void write_edge_list(std::ostream& out, const DynamicGraph& g) {
    for (const Edge& e : g.sorted_edges()) {
        out << e.source << ' ' << e.target << '\n';
    }
}

inline void write_stream(std::ostream& out, const std::vector<StreamEvent>& events) {
    for (const auto& ev : events) {
        switch (ev.kind) {
        case EventKind::Add:
            out << "A " << ev.edge.source << ' ' << ev.edge.target << '\n';
            break;
        case EventKind::Remove:
            out << "R " << ev.edge.source << ' ' << ev.edge.target << '\n';
            break;
        case EventKind::Query:
            out << "Q\n";
            break;
        }
    }
}

inline std::vector<StreamEvent> read_stream(std::istream& in) {
    std::vector<StreamEvent> events;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty()) {
            continue;
        }
        const auto tok = detail::split_ws(body);
        if (tok[0] == "Q" && tok.size() == 1) {
            events.push_back(StreamEvent::query());
        } else if ((tok[0] == "A" || tok[0] == "R") && tok.size() == 3) {
            const auto u = detail::parse_vertex(tok[1], lineno);
            const auto v = detail::parse_vertex(tok[2], lineno);
            events.push_back(tok[0] == "A" ? StreamEvent::add(u, v) : StreamEvent::remove(u, v));
        } else {
            throw ParseError(lineno, "malformed stream event '" + std::string(body) + "'");
        }
    }
    if (in.bad()) {
        throw Error("read error after line " + std::to_string(lineno));
    }
    return events;
}

/**
 * Withhold-then-replay stream generation.
 *
 * Samples chunk_size * query_count edges of `full` without replacement; the
 * rest form the initial graph. The withheld edges are streamed back in
 * dataset order (ascending source, target), or in one random permutation when
 * `shuffle` is set. Each chunk is followed by floor(removal_fraction *
 * chunk_size) removals drawn uniformly from the edges present before the
 * chunk's additions, then a query.
 */
inline GeneratedStream generate_stream(const DynamicGraph& full, const StreamSpec& spec) {
    if (spec.chunk_size == 0 || spec.query_count == 0) {
        throw ConfigError("chunk size and query count must be positive");
    }
    if (!(spec.removal_fraction >= 0.0 && spec.removal_fraction <= 1.0)) {
        throw ConfigError("removal fraction must lie in [0, 1]");
    }
    const auto edges = full.sorted_edges();
    const std::size_t withheld = spec.withheld();
    if (withheld > edges.size()) {
        throw ConfigError("stream needs " + std::to_string(withheld) + " withheld edges but the "
                          "dataset has only " + std::to_string(edges.size()));
    }

    StreamRng rng(spec.rng_seed);

    // Partial Fisher-Yates: the first `withheld` positions become the sample.
    std::vector<std::size_t> pick(edges.size());
    for (std::size_t i = 0; i < pick.size(); ++i) {
        pick[i] = i;
    }
    for (std::size_t i = 0; i < withheld; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(pick.size() - i));
        std::swap(pick[i], pick[j]);
    }
    std::vector<char> is_withheld(edges.size(), 0);
    for (std::size_t i = 0; i < withheld; ++i) {
        is_withheld[pick[i]] = 1;
    }

    GeneratedStream out;
    std::vector<Edge> pool; // edges eligible for removal, in a deterministic order
    std::vector<Edge> adds;
    adds.reserve(withheld);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (is_withheld[i]) {
            adds.push_back(edges[i]);
        } else {
            out.initial.add_edge(edges[i].source, edges[i].target);
            pool.push_back(edges[i]);
        }
    }
    if (spec.shuffle) {
        for (std::size_t i = adds.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.below(i));
            std::swap(adds[i - 1], adds[j]);
        }
    }

    const std::size_t removals = spec.removals_per_chunk();
    out.events.reserve(withheld + spec.query_count * (removals + 1));
    for (std::size_t q = 0; q < spec.query_count; ++q) {
        const auto first = adds.begin() + static_cast<std::ptrdiff_t>(q * spec.chunk_size);
        const auto last = first + static_cast<std::ptrdiff_t>(spec.chunk_size);
        for (auto it = first; it != last; ++it) {
            out.events.push_back(StreamEvent::add(it->source, it->target));
        }
        if (removals > pool.size()) {
            throw ConfigError("chunk " + std::to_string(q + 1) + " needs " +
                              std::to_string(removals) + " removals but only " +
                              std::to_string(pool.size()) + " edges are eligible");
        }
        for (std::size_t k = 0; k < removals; ++k) {
            const std::size_t j = static_cast<std::size_t>(rng.below(pool.size()));
            out.events.push_back(StreamEvent::remove(pool[j].source, pool[j].target));
            pool[j] = pool.back();
            pool.pop_back();
        }
        out.events.push_back(StreamEvent::query());
        pool.insert(pool.end(), first, last);
    }
    return out;
}

} // namespace hotrank
