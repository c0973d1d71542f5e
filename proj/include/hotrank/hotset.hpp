#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hotrank/graph.hpp"
#include "hotrank/rank.hpp"
#include "hotrank/types.hpp"

namespace hotrank {

struct HotSetParams {
    double r = 0.20;     // minimum relative out-degree change
    std::size_t n = 0;   // neighbourhood hops around K_r
    double delta = 0.5;  // score-dilution bound for the per-vertex expansion
    // Seed the delta expansion from K_r as well as K_n. Off by default, which
    // leaves K_delta empty whenever n == 0.
    bool delta_seeds_include_kr = false;

    void validate() const {
        if (!(r >= 0.0)) {
            throw ConfigError("r must be >= 0");
        }
        if (!(delta > 0.0)) {
            throw ConfigError("delta must be > 0");
        }
    }
};

/// Tiers are disjoint and sorted by id; `all` is their union.
struct HotSet {
    std::vector<VertexId> k_r;
    std::vector<VertexId> k_n;
    std::vector<VertexId> k_delta;
    std::vector<VertexId> all;
};

/**
 * Hop budget for vertex v: log(d_bar * score / (delta * degree)) / log(d_bar).
 *
 * This is how many hops v's contribution survives before it is diluted below
 * `delta` of its score, assuming every hop divides by the average degree.
 * Returns 0 where the expression is undefined (d_bar <= 1, degree 0, score <= 0).
 */
inline double delta_hops(double score, std::size_t out_degree, double d_bar, double delta) {
    if (!(d_bar > 1.0) || out_degree == 0 || !(score > 0.0) || !(delta > 0.0)) {
        return 0.0;
    }
    return std::log(d_bar * score / (delta * static_cast<double>(out_degree))) / std::log(d_bar);
}

namespace detail {

inline std::vector<VertexId> to_sorted_ids(const DynamicGraph& g, std::span<const Slot> slots) {
    std::vector<VertexId> ids;
    ids.reserve(slots.size());
    for (Slot s : slots) {
        ids.push_back(g.id_of(s));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

inline std::vector<Slot> to_slots(const DynamicGraph& g, std::span<const VertexId> ids) {
    std::vector<Slot> slots;
    slots.reserve(ids.size());
    for (VertexId id : ids) {
        const auto s = g.slot_of(id);
        if (!s) {
            throw IntegrityError("vertex " + std::to_string(id) + " is not in the graph");
        }
        slots.push_back(*s);
    }
    return slots;
}

inline std::vector<Slot> k_r_slots(const DynamicGraph& g, const DegreeSnapshot& prev, double r) {
    std::vector<Slot> out;
    for (Slot s = 0; s < g.vertex_count(); ++s) {
        if (!prev.contains(s)) {
            out.push_back(s);
            continue;
        }
        const auto before = prev.degree(s);
        const auto now = g.out_degree(s);
        if (before == 0) {
            // Infinite ratio when a degree-0 vertex gains edges.
            if (now != 0) {
                out.push_back(s);
            }
            continue;
        }
        const double ratio = static_cast<double>(now) / static_cast<double>(before);
        if (std::abs(ratio - 1.0) > r) {
            out.push_back(s);
        }
    }
    return out;
}

inline std::vector<Slot> k_n_slots(const DynamicGraph& g, std::span<const Slot> k_r,
                                   std::size_t n) {
    std::vector<Slot> out;
    if (n == 0) {
        return out;
    }
    for (auto [s, hops] : bfs_out_slots(g, k_r, n)) {
        if (hops > 0) {
            out.push_back(s);
        }
    }
    return out;
}

inline std::vector<Slot> k_delta_slots(const DynamicGraph& g, std::span<const Slot> k_r,
                                       std::span<const Slot> k_n, const RankVector& ranks,
                                       double d_bar, double delta, bool seeds_include_kr) {
    if (ranks.size() < g.vertex_count()) {
        throw IntegrityError("rank vector does not cover the graph's vertices");
    }
    std::vector<char> visited(g.vertex_count(), 0);
    for (Slot s : k_r) {
        visited[s] = 1;
    }
    std::vector<Slot> frontier;
    for (Slot s : k_n) {
        visited[s] = 1;
        frontier.push_back(s);
    }
    if (seeds_include_kr) {
        frontier.insert(frontier.end(), k_r.begin(), k_r.end());
    }

    std::vector<Slot> included;
    std::vector<Slot> next;
    for (std::size_t hop = 1; !frontier.empty(); ++hop) {
        next.clear();
        for (Slot u : frontier) {
            for (Slot v : g.out_neighbors(u)) {
                if (visited[v]) {
                    continue;
                }
                visited[v] = 1;
                const double budget = delta_hops(ranks.scores[v], g.out_degree(v), d_bar, delta);
                if (static_cast<double>(hop) <= budget) {
                    included.push_back(v);
                    next.push_back(v);
                }
            }
        }
        frontier.swap(next);
    }
    return included;
}

} // namespace detail

/// Vertices whose out-degree changed by more than r since `prev`, plus new vertices.
inline std::vector<VertexId> select_k_r(const DynamicGraph& g, const DegreeSnapshot& prev,
                                        double r) {
    return detail::to_sorted_ids(g, detail::k_r_slots(g, prev, r));
}

/// Vertices outside K_r within n out-hops of some member of K_r.
inline std::vector<VertexId> select_k_n(const DynamicGraph& g, std::span<const VertexId> k_r,
                                        std::size_t n) {
    const auto seeds = detail::to_slots(g, k_r);
    return detail::to_sorted_ids(g, detail::k_n_slots(g, seeds, n));
}

/**
 * Score-driven expansion from K_n.
 *
 * Frontier BFS along out-edges. A vertex outside K_r and K_n first reached at
 * hop h joins iff h <= delta_hops(its score, its degree, d_bar, delta), and only
 * joined vertices are expanded further.
 */
inline std::vector<VertexId> select_k_delta(const DynamicGraph& g, std::span<const VertexId> k_r,
                                            std::span<const VertexId> k_n,
                                            const RankVector& ranks, double d_bar, double delta,
                                            bool seeds_include_kr = false) {
    const auto r_slots = detail::to_slots(g, k_r);
    const auto n_slots = detail::to_slots(g, k_n);
    return detail::to_sorted_ids(
        g, detail::k_delta_slots(g, r_slots, n_slots, ranks, d_bar, delta, seeds_include_kr));
}

inline HotSet select_hot_set(const DynamicGraph& g, const DegreeSnapshot& prev,
                             const RankVector& ranks, const HotSetParams& params, double d_bar) {
    params.validate();
    const auto r_slots = detail::k_r_slots(g, prev, params.r);
    const auto n_slots = detail::k_n_slots(g, r_slots, params.n);
    const auto d_slots = detail::k_delta_slots(g, r_slots, n_slots, ranks, d_bar, params.delta,
                                               params.delta_seeds_include_kr);
    HotSet hs;
    hs.k_r = detail::to_sorted_ids(g, r_slots);
    hs.k_n = detail::to_sorted_ids(g, n_slots);
    hs.k_delta = detail::to_sorted_ids(g, d_slots);
    hs.all.reserve(hs.k_r.size() + hs.k_n.size() + hs.k_delta.size());
    hs.all.insert(hs.all.end(), hs.k_r.begin(), hs.k_r.end());
    hs.all.insert(hs.all.end(), hs.k_n.begin(), hs.k_n.end());
    hs.all.insert(hs.all.end(), hs.k_delta.begin(), hs.k_delta.end());
    std::sort(hs.all.begin(), hs.all.end());
    return hs;
}

} // namespace hotrank
